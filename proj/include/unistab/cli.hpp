#pragma once

// Subcommands behind the `unistab` executable. Reports are key=value lines.
// Exit codes: 0 success, 1 verified negative, 2 input error.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unistab/generate.hpp"
#include "unistab/io.hpp"

namespace unistab::cli {

enum Exit : int { success = 0, negative = 1, input_error = 2 };

struct Options {
  std::vector<std::string> files;
  std::string g = "g";
  std::string series = "s";
  std::string t = "t";
  std::string phi = "phi";
  std::string basis = "b";
  std::vector<std::string> gens;
  std::string out;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<std::size_t> u;
  bool batch = false;
  // gen
  std::uint64_t seed = 1;
  std::size_t dim = 0;
  std::size_t length = 6;
  std::size_t exponent = 2;
  std::string field = "gf:2";
  std::string kind = "witness";
};

inline std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

inline void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out << text;
}

template <ExactField F>
std::string vec_text(const F& f, const Vec<F>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += f.format(v[i]);
  }
  return s;
}

inline std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

template <ExactField F>
std::vector<std::size_t> member_dims(const Series<F>& s) {
  std::vector<std::size_t> d;
  for (const auto& m : s.members()) d.push_back(m.dim());
  return d;
}

template <ExactField F>
std::size_t param_or(const Problem<F>& p, const std::optional<std::size_t>& flag, const std::string& key) {
  if (flag) return *flag;
  if (auto v = p.param(key)) {
    try {
      return static_cast<std::size_t>(std::stoull(*v));
    } catch (const std::exception&) {
      throw PreconditionError("param '" + key + "' is not a count");
    }
  }
  throw PreconditionError("missing '" + key + "' (pass --" + key + " or a 'param " + key + "' line)");
}

template <ExactField F>
void emit_certificate_report(std::ostream& out, const F& f, const WitnessCertificate<F>& c) {
  out << "result=certificate\n";
  out << "r=" << c.r << '\n';
  out << "pairs=" << c.selection.r() << '\n';
  out << "working_dim=" << c.working_dim << '\n';
  out << "stronger=" << (c.stronger ? "yes" : "no") << '\n';
  out << "probe=" << vec_text(f, c.probe) << '\n';
}

template <ExactField F>
std::string certificate_file(const Problem<F>& src, const Options& o, const WitnessCertificate<F>& c) {
  Problem<F> p(src.field);
  p.dim = src.dim;
  p.matrices.emplace_back(o.g, src.matrix(o.g));
  p.series.emplace_back(o.series, src.series_named(o.series));
  p.certificates.push_back({"c", o.g, o.series, c.r, c.h, c.probe});
  return print_problem(p);
}

template <ExactField F>
int verify_problem(const Problem<F>& p, std::ostream& out) {
  if (p.certificates.empty()) throw PreconditionError("file contains no certificate");
  bool all = true;
  for (const auto& c : p.certificates) {
    auto check = verify_certificate(p.matrix(c.g), p.series_named(c.series), c.h, c.r, c.probe);
    out << "certificate." << c.name << '=' << (check.ok ? "accepted" : "rejected");
    if (!check.ok) out << " (" << check.reason << ')';
    out << '\n';
    all = all && check.ok;
  }
  out << "result=" << (all ? "accepted" : "rejected") << '\n';
  return all ? success : negative;
}

template <ExactField F>
GeneratorSet<F> generators(const Problem<F>& p, const Options& o) {
  std::vector<Matrix<F>> gens;
  if (o.gens.empty())
    for (const auto& [name, m] : p.matrices) gens.push_back(m);
  else
    for (const auto& name : o.gens) gens.push_back(p.matrix(name));
  return GeneratorSet<F>(std::move(gens));
}

template <ExactField F>
int run_on(const std::string& cmd, const Problem<F>& p, const Options& o, std::ostream& out) {
  const F& f = p.field;
  if (cmd == "check-stab") {
    bool in = in_stabilizer(p.matrix(o.g), p.series_named(o.series));
    out << "result=" << (in ? "in-stabilizer" : "not-in-stabilizer") << '\n';
    out << "length=" << p.series_named(o.series).length() << '\n';
    return in ? success : negative;
  }
  if (cmd == "exponent") {
    auto e = unipotent_exponent(p.matrix(o.g));
    if (!e) {
      out << "result=not-unipotent\n";
      return negative;
    }
    out << "result=unipotent\nexponent=" << *e << '\n';
    return success;
  }
  if (cmd == "jordan") {
    const auto& g = p.matrix(o.g);
    if (!unipotent_exponent(g)) {
      out << "result=not-unipotent\n";
      return negative;
    }
    auto jd = jordan_blocks(g);
    out << "result=unipotent\nexponent=" << jd.exponent << "\nblocks=" << jd.blocks.size() << "\nsizes="
        << join(jd.sizes()) << '\n';
    for (std::size_t b = 0; b < jd.blocks.size(); ++b)
      for (std::size_t j = 0; j < jd.blocks[b].size(); ++j)
        out << "vector." << b + 1 << '.' << j + 1 << '=' << vec_text(f, jd.blocks[b][j]) << '\n';
    return success;
  }
  if (cmd == "coarsen") {
    const auto& s = p.series_named(o.series);
    auto c = canonical_coarsening(p.matrix(o.g), s);
    out << "result=coarsened\nlength=" << c.length() << "\noriginal_length=" << s.length()
        << "\nproper=" << (c.length() < s.length() ? "yes" : "no") << "\ndims=" << join(member_dims(c)) << '\n';
    return success;
  }
  if (cmd == "lemma2") {
    const auto& s = p.series_named(o.series);
    auto ui = param_or(p, o.u, "u");
    if (ui < 1 || ui > s.size()) throw PreconditionError("member index u out of range");
    TransvectionSpec<F> spec(s.member(ui), p.matrix(o.phi));
    auto k = param_or(p, o.k, "k");
    auto res = lemma2_check(spec, p.matrix(o.t), k);
    if (res.ok) {
      out << "result=ok\nk=" << k << '\n';
      return success;
    }
    out << "result=counterexample\nvector=" << res.counterexample->first + 1 << "\nk=" << res.counterexample->second
        << '\n';
    return negative;
  }
  if (cmd == "witness" || cmd == "extend-witness") {
    const auto& g = p.matrix(o.g);
    const auto& s = p.series_named(o.series);
    auto cert = cmd == "witness" ? construct_witness(g, s) : extend_witness(g, s, param_or(p, o.n, "n"));
    emit_certificate_report(out, f, cert);
    if (!o.out.empty()) write_file(o.out, certificate_file(p, o, cert));
    return success;
  }
  if (cmd == "verify") return verify_problem(p, out);
  if (cmd == "split") {
    auto split = split_chain(p.series_named(o.series).members());
    std::vector<std::size_t> dims;
    for (const auto& a : split.parts) dims.push_back(a.dim());
    out << "result=direct-sum\nparts=" << split.parts.size() << "\ndims=" << join(dims) << '\n';
    for (std::size_t i = 0; i < split.parts.size(); ++i)
      for (const auto& r : split.parts[i].rows()) out << "part." << i + 1 << '=' << vec_text(f, r) << '\n';
    return success;
  }
  if (cmd == "patch") {
    const auto& s = p.series_named(o.series);
    SectionAssignment<F> a;
    for (const auto& sec : p.sections)
      if (sec.series == o.series) a.sections.push_back({sec.top, sec.bottom, p.matrix(sec.matrix)});
    auto h = patch_sections(p.basis(o.basis), s, a);
    out << "result=patched\nsections=" << a.sections.size() << '\n';
    for (std::size_t i = 0; i < h.rows(); ++i) out << "h." << i + 1 << '=' << vec_text(f, h.row(i)) << '\n';
    return success;
  }
  if (cmd == "lcs") {
    auto chain = module_lcs(generators(p, o));
    std::vector<std::size_t> dims;
    for (const auto& m : chain.members) dims.push_back(m.dim());
    out << "result=" << (chain.reaches_zero ? "reaches-zero" : "stalls") << "\nlength=" << chain.members.size() - 1
        << "\ndims=" << join(dims) << '\n';
    return chain.reaches_zero ? success : negative;
  }
  if (cmd == "refine") {
    auto res = refine_series(p.series_named(o.series), generators(p, o));
    out << "result=" << (res.complete ? "refined" : "obstructed") << "\nlength=" << res.series.length()
        << "\ndims=" << join(member_dims(res.series)) << '\n';
    if (res.obstruction) out << "obstruction=" << *res.obstruction << '\n';
    return res.complete ? success : negative;
  }
  if (cmd == "mclain") {
    std::vector<McLainElement<F>> elems;
    for (const auto& [name, e] : p.mclain) elems.push_back(e);
    auto tr = mclain_truncate(f, elems);
    out << "result=truncated\nd=" << tr.indices.size() << "\nindices=";
    for (std::size_t i = 0; i < tr.indices.size(); ++i) out << (i ? " " : "") << tr.indices[i].get_str();
    auto e = unipotent_exponent(tr.product);
    out << "\nexponent=" << (e ? std::to_string(*e) : "none") << "\nflag_length=" << tr.flag.length() << '\n';
    for (std::size_t i = 0; i < tr.product.rows(); ++i)
      out << "product." << i + 1 << '=' << vec_text(f, tr.product.row(i)) << '\n';
    return success;
  }
  throw PreconditionError("unknown command '" + cmd + "'");
}

inline ProblemFile load(const std::string& path) { return parse_problem(read_file(path)); }

template <ExactField F>
std::string generate_problem(const F& f, const Options& o) {
  Rng rng(o.seed);
  Problem<F> p(f);
  if (o.kind == "witness" || o.kind == "extend") {
    std::size_t n = o.length;
    std::size_t k = o.exponent;
    std::size_t base = 0;
    for (const auto& c : linking_chains(n, k)) base += c.size();
    std::size_t extra = o.kind == "extend" ? 2 : 0;
    std::size_t padding = o.dim > base ? o.dim - base : 0;
    if (o.kind == "extend" && padding == 0) padding = 4;
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto inst = random_witness_instance(f, rng, n, k, extra, padding);
      auto s = inst.s;
      std::size_t bound = n;
      if (o.kind == "extend") {
        // a refinement may admit a shorter stabilized subseries
        s = random_refinement(f, rng, inst.s, 0.5);
        bound = canonical_coarsening(inst.g, s).length();
        if (k + 2 >= bound) continue;
      }
      p.dim = inst.g.rows();
      p.params.emplace_back("n", std::to_string(bound));
      p.matrices.emplace_back("g", inst.g);
      p.series.emplace_back("s", s);
      return print_problem(p);
    }
    throw PreconditionError("could not generate an instance with these parameters");
  }
  std::size_t d = o.dim ? o.dim : 4;
  std::size_t len = std::min(std::max<std::size_t>(o.length, 1), d);
  auto s = random_series(f, rng, d, len);
  p.dim = d;
  if (o.kind == "stab") {
    p.matrices.emplace_back("g", random_stabilizer_element(f, rng, s));
    p.series.emplace_back("s", s);
    return print_problem(p);
  }
  if (o.kind == "lemma2") {
    if (len < 2) throw PreconditionError("lemma2 instances need a series of length >= 2");
    std::size_t ui = std::uniform_int_distribution<std::size_t>(2, len)(rng);
    auto t = random_stabilizer_element(f, rng, s);
    auto spec = random_phi_killing(f, rng, s.member(ui), t);
    p.params.emplace_back("u", std::to_string(ui));
    p.params.emplace_back("k", std::to_string(o.exponent));
    p.matrices.emplace_back("t", t);
    p.matrices.emplace_back("phi", spec.phi());
    p.series.emplace_back("s", s);
    return print_problem(p);
  }
  throw PreconditionError("unknown instance kind '" + o.kind + "'");
}

inline FieldSpec parse_field_option(const std::string& text) {
  if (text == "q" || text == "Q") return FieldSpec::rationals();
  std::string digits = text;
  if (digits.rfind("gf:", 0) == 0)
    digits = digits.substr(3);
  else if (digits.rfind("gf", 0) == 0)
    digits = digits.substr(2);
  return FieldSpec::prime(detail::parse_int(digits));
}

/// Runs one subcommand; reports go to `out`, diagnostics to `err`.
inline int run(const std::string& cmd, const Options& o, std::ostream& out, std::ostream& err) {
  try {
    if (cmd == "gen") {
      auto spec = parse_field_option(o.field);
      std::string text = spec.kind == FieldSpec::Kind::prime ? generate_problem(PrimeField(spec.p), o)
                                                             : generate_problem(RationalField{}, o);
      if (o.out.empty())
        out << text;
      else
        write_file(o.out, text);
      return success;
    }
    if (o.files.empty()) throw PreconditionError("no input file");
    if (cmd == "verify" && (o.batch || o.files.size() > 1)) {
      std::vector<std::future<std::pair<int, std::string>>> jobs;
      for (const auto& path : o.files)
        jobs.push_back(std::async(std::launch::async, [path] {
          std::ostringstream report;
          try {
            auto pf = load(path);
            int code = std::visit([&](const auto& p) { return verify_problem(p, report); }, pf);
            return std::make_pair(code, report.str());
          } catch (const Error& e) {
            return std::make_pair(int(input_error), std::string("error=") + e.what() + "\n");
          }
        }));
      int worst = success;
      std::size_t accepted = 0;
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto [code, text] = jobs[i].get();
        std::istringstream lines(text);
        for (std::string line; std::getline(lines, line);) out << "file." << i + 1 << '.' << line << '\n';
        worst = std::max(worst, code);
        accepted += code == success;
      }
      out << "files=" << jobs.size() << "\naccepted=" << accepted << "\nresult="
          << (worst == success ? "accepted" : "rejected") << '\n';
      return worst;
    }
    auto pf = load(o.files.front());
    return std::visit([&](const auto& p) { return run_on(cmd, p, o, out); }, pf);
  } catch (const WitnessPreconditionError& e) {
    out << "result=precondition-failed\n";
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const Error& e) {
    out << "result=error\n";
    err << "error: " << e.what() << '\n';
    return input_error;
  }
}

inline const std::vector<std::pair<std::string, std::string>>& commands() {
  static const std::vector<std::pair<std::string, std::string>> list{
      {"check-stab", "test whether g stabilizes the series"},
      {"exponent", "unipotent exponent of g"},
      {"jordan", "Jordan blocks of a unipotent g"},
      {"coarsen", "shortest subseries stabilized by g"},
      {"lemma2", "check the iterated commutator identity for x_phi and t"},
      {"witness", "build h with (g g^h - 1)^(r-1) != 0"},
      {"extend-witness", "witness through a g-invariant subspace"},
      {"verify", "check certificate files"},
      {"split", "split the series into a direct sum of factor complements"},
      {"patch", "glue section maps into one stabilizer element"},
      {"lcs", "lower central chain of the module under the generators"},
      {"refine", "refine the series by the generators"},
      {"mclain", "truncate McLain elements to a finite flag"},
      {"gen", "print a seeded random problem file"},
  };
  return list;
}

inline int main_entry(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact computations with series of subspaces and their stability groups"};
  app.require_subcommand(1);
  Options o;
  std::string chosen;
  std::size_t n = 0, k = 0, u = 0;
  std::vector<CLI::Option*> n_opts, k_opts, u_opts;
  for (const auto& [name, help] : commands()) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&chosen, name = name] { chosen = name; });
    if (name == "gen") {
      sub->add_option("--seed", o.seed, "random seed");
      sub->add_option("--dim", o.dim, "ambient dimension");
      sub->add_option("--length", o.length, "series length");
      sub->add_option("--exponent", o.exponent, "unipotent exponent (or k for lemma2)");
      sub->add_option("--field", o.field, "q, gf:<p> or gf<p>");
      sub->add_option("--kind", o.kind, "witness, extend, stab or lemma2");
      sub->add_option("--out", o.out, "output path");
      continue;
    }
    sub->add_option("files", o.files, "problem files")->required();
    sub->add_option("--g", o.g, "matrix name of g");
    sub->add_option("--series", o.series, "series name");
    if (name == "lemma2") {
      sub->add_option("--t", o.t, "matrix name of t");
      sub->add_option("--phi", o.phi, "matrix name of phi");
      u_opts.push_back(sub->add_option("--u", u, "1-based member index of U"));
      k_opts.push_back(sub->add_option("--k", k, "largest commutator length"));
    }
    if (name == "witness" || name == "extend-witness") sub->add_option("--out", o.out, "certificate output path");
    if (name == "extend-witness") n_opts.push_back(sub->add_option("--n", n, "required subseries length bound"));
    if (name == "verify") sub->add_flag("--batch", o.batch, "verify files concurrently");
    if (name == "patch") sub->add_option("--basis", o.basis, "adapted basis name");
    if (name == "lcs" || name == "refine") sub->add_option("--gens", o.gens, "generator matrix names");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? success : input_error;
  }
  auto given = [](const std::vector<CLI::Option*>& opts) {
    return std::any_of(opts.begin(), opts.end(), [](const CLI::Option* x) { return x->count() > 0; });
  };
  if (given(n_opts)) o.n = n;
  if (given(k_opts)) o.k = k;
  if (given(u_opts)) o.u = u;
  return run(chosen, o, out, err);
}

}  // namespace unistab::cli
