#pragma once

#include "unistab/field.hpp"
#include "unistab/matrix.hpp"
#include "unistab/subspace.hpp"
#include "unistab/series.hpp"
#include "unistab/unipotent.hpp"
#include "unistab/transvections.hpp"
#include "unistab/witness.hpp"
#include "unistab/decomposition.hpp"
#include "unistab/series_builder.hpp"
#include "unistab/generate.hpp"
#include "unistab/io.hpp"
