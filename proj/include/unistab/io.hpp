#pragma once

// Line-based problem files.
//
//   field gf <p> | field q
//   dim <d>
//   param <key> <value>
//   matrix <name> [<size> | <rows> <cols>] then rows of scalars (default d x d)
//   basis <name> <count>                then <count> vectors
//   series <name> <m>                   then m blocks "subspace <k>" + k vectors
//   section <name> <series> <top> <bottom> <matrix>
//   mclain <name> <terms>               then <terms> lines "<r> <s> <coeff>"
//   certificate <name> <g> <series> <r> then d rows of h and "probe <d scalars>"
//
// `#` starts a comment. V and 0 are implied in every series.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "unistab/decomposition.hpp"
#include "unistab/series_builder.hpp"

namespace unistab {

class ParseError : public PreconditionError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : PreconditionError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct SectionEntry {
  std::string name;
  std::string series;
  std::size_t top = 0;
  std::size_t bottom = 0;
  std::string matrix;
  bool operator==(const SectionEntry&) const = default;
};

template <ExactField F>
struct CertificateEntry {
  std::string name;
  std::string g;
  std::string series;
  std::size_t r = 0;
  Matrix<F> h;
  Vec<F> probe;
  bool operator==(const CertificateEntry&) const = default;
};

template <ExactField F>
bool operator==(const McLainElement<F>& a, const McLainElement<F>& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (a.terms[i].r != b.terms[i].r || a.terms[i].s != b.terms[i].s || !(a.terms[i].coeff == b.terms[i].coeff))
      return false;
  return true;
}

template <ExactField F>
struct Problem {
  template <class T>
  using Named = std::vector<std::pair<std::string, T>>;

  F field;
  std::optional<std::size_t> dim;
  Named<std::string> params;
  Named<Matrix<F>> matrices;
  Named<std::vector<Vec<F>>> bases;
  Named<Series<F>> series;
  std::vector<SectionEntry> sections;
  Named<McLainElement<F>> mclain;
  std::vector<CertificateEntry<F>> certificates;

  explicit Problem(F f) : field(std::move(f)) {}

  template <class T>
  static const T* find(const Named<T>& list, const std::string& name) {
    for (const auto& [k, v] : list)
      if (k == name) return &v;
    return nullptr;
  }
  template <class T>
  static const T& get(const Named<T>& list, const std::string& name, const char* what) {
    if (auto p = find(list, name)) return *p;
    throw PreconditionError(std::string("no ") + what + " named '" + name + "'");
  }

  const Matrix<F>& matrix(const std::string& name) const { return get(matrices, name, "matrix"); }
  const Series<F>& series_named(const std::string& name) const { return get(series, name, "series"); }
  const std::vector<Vec<F>>& basis(const std::string& name) const { return get(bases, name, "basis"); }
  std::optional<std::string> param(const std::string& key) const {
    if (auto p = find(params, key)) return *p;
    return std::nullopt;
  }
  std::size_t require_dim() const {
    if (!dim) throw PreconditionError("file declares no dimension");
    return *dim;
  }

  bool operator==(const Problem& o) const {
    return field == o.field && dim == o.dim && params == o.params && matrices == o.matrices && bases == o.bases &&
           series == o.series && sections == o.sections && mclain == o.mclain && certificates == o.certificates;
  }
};

using ProblemFile = std::variant<Problem<PrimeField>, Problem<RationalField>>;

namespace detail {

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) line.tokens.push_back({std::string(raw.substr(start, i - start)), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}
  bool done() const { return i_ >= lines_.size(); }
  const Line& peek() const { return lines_[i_]; }
  const Line& next(std::size_t last_line) {
    if (done()) throw ParseError(last_line + 1, 1, "unexpected end of file");
    return lines_[i_++];
  }

 private:
  std::vector<Line> lines_;
  std::size_t i_ = 0;
};

[[noreturn]] inline void fail_at(const Line& l, std::size_t tok, const std::string& msg) {
  std::size_t col = tok < l.tokens.size() ? l.tokens[tok].column : (l.tokens.empty() ? 1 : l.tokens.back().column);
  throw ParseError(l.number, col, msg);
}

inline void expect_count(const Line& l, std::size_t lo, std::size_t hi) {
  if (l.tokens.size() < lo || l.tokens.size() > hi)
    fail_at(l, l.tokens.size() < lo ? l.tokens.size() : hi, "wrong number of fields for '" + l.tokens[0].text + "'");
}

inline std::size_t parse_count(const Line& l, std::size_t tok) {
  const auto& t = l.tokens[tok].text;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) fail_at(l, tok, "expected a non-negative integer, got '" + t + "'");
  return v;
}

template <ExactField F>
Vec<F> parse_vector(const F& f, const Line& l, std::size_t first, std::size_t n) {
  if (l.tokens.size() != first + n)
    fail_at(l, std::min(l.tokens.size(), first + n), "expected " + std::to_string(n) + " scalars");
  Vec<F> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    try {
      v[j] = f.parse(l.tokens[first + j].text);
    } catch (const PreconditionError& e) {
      fail_at(l, first + j, e.what());
    }
  }
  return v;
}

inline void check_name_free(const Line& l, std::vector<std::string>& names, const std::string& kind) {
  auto key = kind + ":" + l.tokens[1].text;
  for (const auto& n : names)
    if (n == key) fail_at(l, 1, "duplicate " + kind + " name '" + l.tokens[1].text + "'");
  names.push_back(key);
}

template <ExactField F>
Problem<F> parse_body(F field, Cursor& cur, std::size_t field_line) {
  Problem<F> p(std::move(field));
  const F& f = p.field;
  std::size_t last = field_line;
  std::vector<std::string> names;
  auto need_dim = [&](const Line& l) {
    if (!p.dim) fail_at(l, 0, "'dim' must be declared before '" + l.tokens[0].text + "'");
    return *p.dim;
  };
  while (!cur.done()) {
    const Line& l = cur.next(last);
    last = l.number;
    const auto& kw = l.tokens[0].text;
    if (kw == "dim") {
      expect_count(l, 2, 2);
      if (p.dim) fail_at(l, 0, "duplicate 'dim'");
      p.dim = parse_count(l, 1);
    } else if (kw == "param") {
      expect_count(l, 3, 3);
      check_name_free(l, names, "param");
      p.params.emplace_back(l.tokens[1].text, l.tokens[2].text);
    } else if (kw == "matrix") {
      // matrix <name> [<size> | <rows> <cols>]
      expect_count(l, 2, 4);
      std::size_t rows = 0, cols = 0;
      if (l.tokens.size() == 2) rows = cols = need_dim(l);
      if (l.tokens.size() == 3) rows = cols = parse_count(l, 2);
      if (l.tokens.size() == 4) {
        rows = parse_count(l, 2);
        cols = parse_count(l, 3);
      }
      check_name_free(l, names, "matrix");
      Matrix<F> m(f, rows, cols);
      for (std::size_t i = 0; i < rows; ++i) {
        const Line& row = cur.next(last);
        last = row.number;
        m.set_row(i, parse_vector(f, row, 0, cols));
      }
      p.matrices.emplace_back(l.tokens[1].text, std::move(m));
    } else if (kw == "basis") {
      expect_count(l, 3, 3);
      std::size_t d = need_dim(l);
      std::size_t count = parse_count(l, 2);
      check_name_free(l, names, "basis");
      std::vector<Vec<F>> vs;
      for (std::size_t i = 0; i < count; ++i) {
        const Line& row = cur.next(last);
        last = row.number;
        vs.push_back(parse_vector(f, row, 0, d));
      }
      p.bases.emplace_back(l.tokens[1].text, std::move(vs));
    } else if (kw == "series") {
      expect_count(l, 3, 3);
      std::size_t d = need_dim(l);
      std::size_t m = parse_count(l, 2);
      check_name_free(l, names, "series");
      std::vector<Subspace<F>> members;
      for (std::size_t i = 0; i < m; ++i) {
        const Line& head = cur.next(last);
        last = head.number;
        if (head.tokens[0].text != "subspace") fail_at(head, 0, "expected 'subspace'");
        expect_count(head, 2, 2);
        std::size_t k = parse_count(head, 1);
        std::vector<Vec<F>> rows;
        for (std::size_t j = 0; j < k; ++j) {
          const Line& row = cur.next(last);
          last = row.number;
          rows.push_back(parse_vector(f, row, 0, d));
        }
        members.push_back(Subspace<F>::span(f, d, rows));
      }
      try {
        p.series.emplace_back(l.tokens[1].text, Series<F>::validate(f, d, members));
      } catch (const IncomparableError& e) {
        fail_at(l, 1, "series '" + l.tokens[1].text + "': members " + std::to_string(e.first + 1) + " and " +
                          std::to_string(e.second + 1) + " are incomparable");
      }
    } else if (kw == "section") {
      expect_count(l, 6, 6);
      check_name_free(l, names, "section");
      p.sections.push_back({l.tokens[1].text, l.tokens[2].text, parse_count(l, 3), parse_count(l, 4), l.tokens[5].text});
    } else if (kw == "mclain") {
      expect_count(l, 3, 3);
      check_name_free(l, names, "mclain");
      std::size_t terms = parse_count(l, 2);
      RationalField q;
      McLainElement<F> e;
      for (std::size_t i = 0; i < terms; ++i) {
        const Line& row = cur.next(last);
        last = row.number;
        expect_count(row, 3, 3);
        typename McLainElement<F>::Term t;
        try {
          t.r = q.parse(row.tokens[0].text);
          t.s = q.parse(row.tokens[1].text);
        } catch (const PreconditionError& ex) {
          fail_at(row, 0, ex.what());
        }
        if (!(t.r < t.s)) fail_at(row, 0, "McLain index pair must satisfy r < s");
        t.coeff = parse_vector(f, row, 2, 1)[0];
        e.terms.push_back(std::move(t));
      }
      p.mclain.emplace_back(l.tokens[1].text, std::move(e));
    } else if (kw == "certificate") {
      expect_count(l, 5, 5);
      std::size_t d = need_dim(l);
      check_name_free(l, names, "certificate");
      CertificateEntry<F> c{l.tokens[1].text, l.tokens[2].text, l.tokens[3].text, parse_count(l, 4),
                            Matrix<F>(f, d, d), {}};
      for (std::size_t i = 0; i < d; ++i) {
        const Line& row = cur.next(last);
        last = row.number;
        c.h.set_row(i, parse_vector(f, row, 0, d));
      }
      const Line& probe = cur.next(last);
      last = probe.number;
      if (probe.tokens[0].text != "probe") fail_at(probe, 0, "expected 'probe'");
      c.probe = parse_vector(f, probe, 1, d);
      p.certificates.push_back(std::move(c));
    } else if (kw == "field") {
      fail_at(l, 0, "duplicate 'field'");
    } else {
      fail_at(l, 0, "unknown keyword '" + kw + "'");
    }
  }
  return p;
}

template <ExactField F>
void print_vec(std::ostream& os, const F& f, const Vec<F>& v) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j) os << ' ';
    os << f.format(v[j]);
  }
  os << '\n';
}

}  // namespace detail

inline ProblemFile parse_problem(std::string_view text) {
  detail::Cursor cur(detail::tokenize(text));
  if (cur.done()) throw ParseError(1, 1, "empty file");
  const auto& l = cur.next(0);
  if (l.tokens[0].text != "field") detail::fail_at(l, 0, "file must start with 'field'");
  if (l.tokens.size() == 2 && l.tokens[1].text == "q") return detail::parse_body(RationalField{}, cur, l.number);
  if (l.tokens.size() == 3 && l.tokens[1].text == "gf") {
    std::int64_t p = 0;
    try {
      p = detail::parse_int(l.tokens[2].text);
      return detail::parse_body(PrimeField(p), cur, l.number);
    } catch (const ParseError&) {
      throw;
    } catch (const PreconditionError& e) {
      detail::fail_at(l, 2, e.what());
    }
  }
  detail::fail_at(l, 1, "expected 'gf <p>' or 'q'");
}

/// Canonical text: fixed section order, reduced scalars, series members in echelon form.
template <ExactField F>
std::string print_problem(const Problem<F>& p) {
  const F& f = p.field;
  std::ostringstream os;
  os << "field " << f.spec().to_string() << '\n';
  if (p.dim) os << "dim " << *p.dim << '\n';
  for (const auto& [k, v] : p.params) os << "param " << k << ' ' << v << '\n';
  for (const auto& [name, m] : p.matrices) {
    os << "matrix " << name;
    if (!m.square())
      os << ' ' << m.rows() << ' ' << m.cols();
    else if (!p.dim || m.rows() != *p.dim)
      os << ' ' << m.rows();
    os << '\n' << m.to_string();
  }
  for (const auto& [name, vs] : p.bases) {
    os << "basis " << name << ' ' << vs.size() << '\n';
    for (const auto& v : vs) detail::print_vec(os, f, v);
  }
  for (const auto& [name, s] : p.series) {
    os << "series " << name << ' ' << (s.size() >= 2 ? s.size() - 2 : 0) << '\n';
    for (std::size_t l = 2; l < s.size(); ++l) {
      const auto& x = s.member(l);
      os << "subspace " << x.dim() << '\n' << x.basis().to_string();
    }
  }
  for (const auto& sec : p.sections)
    os << "section " << sec.name << ' ' << sec.series << ' ' << sec.top << ' ' << sec.bottom << ' ' << sec.matrix
       << '\n';
  for (const auto& [name, e] : p.mclain) {
    os << "mclain " << name << ' ' << e.terms.size() << '\n';
    for (const auto& t : e.terms) os << t.r.get_str() << ' ' << t.s.get_str() << ' ' << f.format(t.coeff) << '\n';
  }
  for (const auto& c : p.certificates) {
    os << "certificate " << c.name << ' ' << c.g << ' ' << c.series << ' ' << c.r << '\n' << c.h.to_string();
    os << "probe ";
    detail::print_vec(os, f, c.probe);
  }
  return os.str();
}

inline std::string print_problem(const ProblemFile& p) {
  return std::visit([](const auto& x) { return print_problem(x); }, p);
}

}  // namespace unistab
