// qtchar: t-deformed q-characters, root-of-unity specializations, and
// Kazhdan-Lusztig-type decompositions for symmetrizable Cartan matrices.
//
// Exit codes: 0 complete, 2 truncated, 3 inconsistent, 64 usage, 74 I/O.

#include "qtchar/errors.hpp"
#include "qtchar/jsonio.hpp"
#include "qtchar/kl.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace qtchar;

namespace {

constexpr int kExitComplete = 0;
constexpr int kExitTruncated = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

struct CommonArgs {
  std::string cartan_path;
  int s = 0;
  std::int64_t max_degree = 10;
  std::string format = "json";
  bool t1 = false;
  bool allow_decomposable = false;
  bool cc_override = false;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_s = true) {
  cmd->add_option("--cartan", a.cartan_path, "Cartan matrix JSON file")->required();
  if (with_s)
    cmd->add_option("--s", a.s, "root-of-unity order (0 = generic)")
        ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-degree", a.max_degree, "truncation degree (default 10)");
  cmd->add_option("--format", a.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("--t1", a.t1, "collapse t = 1 (classical shadow)");
  cmd->add_flag("--allow-decomposable", a.allow_decomposable,
                "process decomposable matrices per block");
  cmd->add_flag("--override-cc", a.cc_override,
                "run the algorithm even when C_{i,j}C_{j,i} > 3 somewhere");
}

AlgebraContext make_context(const CommonArgs& a) {
  CartanData cd = load_cartan_file(a.cartan_path, a.allow_decomposable);
  return AlgebraContext::make(std::move(cd), a.s, BicharMode::Standard, a.t1);
}

void emit(const Json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    // text rendering is human-oriented and unstable
    std::cout << j.dump(2) << "\n";
  }
}

int status_code(AlgoStatus st) {
  switch (st) {
  case AlgoStatus::Complete: return kExitComplete;
  case AlgoStatus::Inconsistent: return kExitInconsistent;
  default: return kExitTruncated;
  }
}

int run_classify(const CommonArgs& a) {
  CartanData cd = load_cartan_file(a.cartan_path, a.allow_decomposable);
  emit(classify_to_json(cd), a.format);
  return kExitComplete;
}

int run_compute(const CommonArgs& a, const std::string& seed, const std::string& route) {
  AlgebraContext ctx = make_context(a);
  CharacterEngine eng(ctx, a.cc_override);
  RepMonomial m = parse_rep_monomial(ctx, seed);
  CharacterSeries series =
      ctx.periodic()
          ? eng.chi_eps_t(m, a.max_degree,
                          route == "axquat" ? EpsRoute::Axquat : EpsRoute::Tau)
          : eng.chi_qt(m, a.max_degree);
  Json out;
  out["command"] = "compute";
  out["seed"] = m.to_string();
  out["s"] = a.s;
  if (ctx.periodic()) out["route"] = route;
  out["max_degree"] = a.max_degree;
  out["status"] = series.complete ? "Complete" : "Truncated";
  if (a.t1) {
    out["classical"] = true;
    out["q_character"] = ylaurent_to_json(pi_hat(ctx, series.element));
    out["q_character_text"] = y_laurent_to_string(pi_hat(ctx, series.element));
  } else {
    out["series"] = series_to_json(series);
  }
  emit(out, a.format);
  return series.complete ? kExitComplete : kExitTruncated;
}

int run_kl(const CommonArgs& a, const std::string& monomial) {
  AlgebraContext ctx = make_context(a);
  CharacterEngine eng(ctx, a.cc_override);
  AlgebraElement seed_elem = word_to_element(ctx, monomial);
  if (seed_elem.size() != 1)
    fail("UsageError", "--monomial must be a single monomial");
  const auto& [e, coeff] = *seed_elem.terms().begin();
  NormalizedMonomial seed = normalize_seed(ctx, e); // bar-fixed normalization
  bool finite = ctx.cartan().flags().finite_type;
  KLResult kl = (!ctx.periodic() || finite) ? kl_decompose(eng, seed, a.max_degree)
                                            : kl_nonfinite(eng, seed, a.max_degree);
  Json out;
  out["command"] = "kl";
  out["seed"] = seed.to_string();
  out["s"] = a.s;
  out["max_degree"] = a.max_degree;
  out.update(kl_to_json(kl));
  emit(out, a.format);
  return status_code(kl.status);
}

int run_probe(const CommonArgs& a, const std::string& seed) {
  AlgebraContext ctx = make_context(a);
  CharacterEngine eng(ctx, a.cc_override);
  RepMonomial m = parse_rep_monomial(ctx, seed);
  ExponentVector head;
  for (const auto& [k, x] : m.entries()) head.add_y(k.i, k.l, x);
  ProbeReport rep = eng.stops_probe(head, a.max_degree);
  Json out;
  out["command"] = "probe";
  out["seed"] = m.to_string();
  out["max_degree"] = a.max_degree;
  out.update(probe_to_json(rep));
  emit(out, a.format);
  return status_code(rep.status);
}

int run_star(const CommonArgs& a, const std::string& lhs, const std::string& rhs,
             const std::string& assoc) {
  AlgebraContext ctx = make_context(a);
  CharacterEngine eng(ctx, a.cc_override);
  RepElement x{{parse_rep_monomial(ctx, lhs), IntLaurent::one()}};
  RepElement y{{parse_rep_monomial(ctx, rhs), IntLaurent::one()}};
  RepElement prod = eng.star_product(x, y, a.max_degree);
  Json out;
  out["command"] = "star";
  out["lhs"] = lhs;
  out["rhs"] = rhs;
  out["max_degree"] = a.max_degree;
  out["product"] = rep_to_json(prod);
  if (!assoc.empty()) {
    // associativity defect report: (x * y) * z vs x * (y * z)
    RepElement z{{parse_rep_monomial(ctx, assoc), IntLaurent::one()}};
    RepElement left = eng.star_product(prod, z, a.max_degree);
    RepElement right = eng.star_product(x, eng.star_product(y, z, a.max_degree),
                                        a.max_degree);
    RepElement defect = left;
    for (const auto& [m, c] : right) {
      auto [it, fresh] = defect.emplace(m, -c);
      if (!fresh) {
        it->second -= c;
        if (it->second.is_zero()) defect.erase(it);
      }
    }
    out["assoc_with"] = assoc;
    out["associative"] = defect.empty();
    out["assoc_defect"] = rep_to_json(defect);
  }
  emit(out, a.format);
  return kExitComplete;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"t-deformed q-characters and Kazhdan-Lusztig-type polynomials "
               "for symmetrizable Cartan matrices"};
  app.require_subcommand(1);

  CommonArgs a;
  std::string seed, monomial, route = "tau", lhs, rhs, assoc;

  auto* classify = app.add_subcommand("classify", "validate and classify a Cartan matrix");
  add_common(classify, a, /*with_s=*/false);

  auto* compute = app.add_subcommand("compute", "q,t- or eps,t-character of a Rep monomial");
  add_common(compute, a);
  compute->add_option("--seed", seed, "Rep monomial, e.g. \"X[1,0]*X[2,3]\"")->required();
  compute->add_option("--route", route, "tau|axquat (s >= 1 only)")
      ->check(CLI::IsMember({"tau", "axquat"}));

  auto* kl = app.add_subcommand("kl", "bar-invariant triangular decomposition");
  add_common(kl, a);
  kl->add_option("--monomial", monomial, "dominant monomial, e.g. \"Y[0]*Y[1]*Y[2]\"")
      ->required();

  auto* probe = app.add_subcommand("probe", "algorithm finiteness probe");
  add_common(probe, a);
  probe->add_option("--seed", seed, "Rep monomial seed")->required();

  auto* star = app.add_subcommand("star", "deformed product on Rep_t");
  add_common(star, a);
  star->add_option("--lhs", lhs, "left Rep monomial")->required();
  star->add_option("--rhs", rhs, "right Rep monomial")->required();
  star->add_option("--assoc", assoc, "third factor for an associativity defect report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (classify->parsed()) return run_classify(a);
    if (compute->parsed()) return run_compute(a, seed, route);
    if (kl->parsed()) return run_kl(a, monomial);
    if (probe->parsed()) return run_probe(a, seed);
    if (star->parsed()) return run_star(a, lhs, rhs, assoc);
  } catch (const QtError& e) {
    Json err;
    err["code"] = e.code();
    err["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    if (e.code() == "IOError") return kExitIo;
    if (e.code() == "Inconsistent") return kExitInconsistent;
    if (e.code() == "ParseError" || e.code() == "UsageError") return kExitUsage;
    return kExitTruncated;
  } catch (const std::exception& e) {
    std::cerr << "{\"code\": \"Internal\", \"message\": \"" << e.what() << "\"}\n";
    return 1;
  }
  return kExitUsage;
}
