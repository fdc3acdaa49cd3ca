#include "qtchar/jsonio.hpp"

#include "qtchar/errors.hpp"

#include <fstream>

namespace qtchar {

namespace {

// BigInt coefficients ride as JSON numbers while they fit, strings beyond
Json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  fail("ParseError", "expected an integer or integer string");
}

Json genmap_to_json(const ExponentVector::Entries& m) {
  Json out = Json::object();
  for (const auto& [k, e] : m)
    out[std::to_string(k.i + 1) + "," + std::to_string(k.l)] = e;
  return out;
}

void genmap_from_json(const Json& j, bool y_kind, ExponentVector& e) {
  for (const auto& [key, val] : j.items()) {
    auto comma = key.find(',');
    if (comma == std::string::npos) fail("ParseError", "expected \"i,l\" key");
    int i = std::stoi(key.substr(0, comma)) - 1;
    std::int64_t l = std::stoll(key.substr(comma + 1));
    if (y_kind)
      e.add_y(i, l, val.get<int>());
    else
      e.add_v(i, l, val.get<int>());
  }
}

} // namespace

Json laurent_to_json(const IntLaurent& p) {
  Json out = Json::object();
  for (const auto& [e, a] : p.terms()) out[std::to_string(e)] = bigint_to_json(a);
  return out;
}

IntLaurent laurent_from_json(const Json& j) {
  IntLaurent p;
  for (const auto& [key, val] : j.items())
    p.add_term(std::stoll(key), bigint_from_json(val));
  return p;
}

Json exponent_to_json(const ExponentVector& e) {
  Json out = Json::object();
  out["y"] = genmap_to_json(e.y_entries());
  out["v"] = genmap_to_json(e.v_entries());
  return out;
}

ExponentVector exponent_from_json(const Json& j) {
  ExponentVector e;
  if (j.contains("y")) genmap_from_json(j.at("y"), true, e);
  if (j.contains("v")) genmap_from_json(j.at("v"), false, e);
  return e;
}

Json element_to_json(const AlgebraElement& a) {
  Json out = Json::array();
  for (const auto& [e, c] : a.terms()) {
    Json term = exponent_to_json(e);
    term["coeff"] = laurent_to_json(c);
    out.push_back(std::move(term));
  }
  return out;
}

AlgebraElement element_from_json(const Json& j) {
  AlgebraElement a;
  for (const auto& term : j)
    a.add_term(exponent_from_json(term), laurent_from_json(term.at("coeff")));
  return a;
}

Json series_to_json(const CharacterSeries& s) {
  Json out;
  out["max_degree"] = s.max_degree;
  out["complete"] = s.complete;
  out["seed"] = exponent_to_json(s.seed);
  out["element"] = element_to_json(s.element);
  return out;
}

Json ylaurent_to_json(const YLaurent& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p) {
    Json term;
    Json mono = Json::object();
    for (const auto& [k, e] : m)
      mono[std::to_string(k.i + 1) + "," + std::to_string(k.l)] = e;
    term["monomial"] = std::move(mono);
    term["coeff"] = bigint_to_json(c);
    out.push_back(std::move(term));
  }
  return out;
}

Json rep_to_json(const RepElement& r) {
  Json out = Json::array();
  for (const auto& [m, c] : r) {
    Json term;
    term["monomial"] = m.to_string();
    term["coeff"] = laurent_to_json(c);
    out.push_back(std::move(term));
  }
  return out;
}

Json screening_to_json(const ScreeningElement& s) {
  Json out = Json::array();
  for (const auto& [key, c] : s.terms()) {
    Json term;
    term["monomial"] = exponent_to_json(key.e);
    term["s_index"] = key.l;
    term["coeff"] = laurent_to_json(c);
    out.push_back(std::move(term));
  }
  return out;
}

Json kl_to_json(const KLResult& kl) {
  Json out;
  out["status"] = to_string(kl.status);
  out["max_degree"] = kl.max_degree;
  out["closure_certified"] = kl.closure_certified;
  out["level_finiteness_certified"] = kl.level_finiteness_certified;
  Json basis = Json::array();
  for (const auto& m : kl.basis) {
    Json b;
    b["monomial"] = m.to_string();
    b["alpha"] = m.alpha;
    b["vector"] = exponent_to_json(m.e);
    b["degree"] = m.e.degree();
    basis.push_back(std::move(b));
  }
  out["basis"] = std::move(basis);
  Json pj = Json::array();
  for (const auto& [key, poly] : kl.p) {
    if (key.first == key.second) continue; // diagonal is 1 by convention
    Json rec;
    rec["from"] = key.first;
    rec["to"] = key.second;
    rec["poly"] = laurent_to_json(poly);
    pj.push_back(std::move(rec));
  }
  out["P"] = std::move(pj);
  Json mj = Json::array();
  for (const auto& [key, poly] : kl.mu) {
    if (key.first == key.second) continue;
    Json rec;
    rec["from"] = key.first;
    rec["to"] = key.second;
    rec["poly"] = laurent_to_json(poly);
    mj.push_back(std::move(rec));
  }
  out["mu"] = std::move(mj);
  Json lj = Json::array();
  for (const auto& l : kl.l_elems) lj.push_back(element_to_json(l));
  out["L"] = std::move(lj);
  return out;
}

Json probe_to_json(const ProbeReport& rep) {
  Json out;
  switch (rep.status) {
  case AlgoStatus::Complete:
    out["outcome"] = "StoppedAt";
    out["degree"] = rep.completed_degree;
    break;
  case AlgoStatus::Inconsistent:
    out["outcome"] = "Inconsistent";
    break;
  default:
    out["outcome"] = "NotStoppedBy";
    out["degree"] = rep.max_degree;
    break;
  }
  out["monomials"] = rep.monomial_count;
  if (rep.witness) out["witness"] = rep.witness->to_string();
  if (rep.collision) out["dominant_collision"] = rep.collision->to_string();
  out["antidominant_found"] = rep.antidominant.has_value();
  if (rep.antidominant) out["antidominant"] = rep.antidominant->to_string();
  out["null_vector_found"] = rep.null_vector_found;
  if (rep.null_vector_found) out["u_sum_invariant"] = rep.u_sum_invariant_ok;
  return out;
}

Json classify_to_json(const CartanData& cd) {
  Json out;
  if (!cd.name().empty()) out["name"] = cd.name();
  out["rank"] = cd.n();
  out["matrix"] = cd.c();
  out["symmetrizer"] = cd.r();
  out["r_vee"] = cd.rvee();
  const auto& f = cd.flags();
  Json flags;
  flags["symmetric"] = f.symmetric;
  flags["symmetrizable"] = f.symmetrizable;
  flags["indecomposable"] = f.indecomposable;
  flags["bz_symmetric"] = f.bz_symmetric;
  flags["b_symmetric"] = f.b_symmetric;
  flags["q_symmetrizable"] = f.q_symmetrizable;
  flags["cc_le3"] = f.cc_le3;
  flags["det_cz_nonzero"] = f.det_cz_nonzero;
  flags["finite_type"] = f.finite_type;
  out["flags"] = std::move(flags);
  IntLaurent det = det_cz(cd);
  out["det_cz"] = laurent_to_json(det);
  if (det.is_zero()) {
    out["det_cz_vanishing_s"] = "all"; // identically zero
  } else {
    Json vanish = Json::array();
    for (auto s : det_cz_vanishing_s(cd)) vanish.push_back(s);
    out["det_cz_vanishing_s"] = std::move(vanish);
  }
  return out;
}

CartanData cartan_from_json(const Json& j, bool allow_decomposable) {
  if (!j.contains("matrix")) fail("ParseError", "cartan file needs a \"matrix\" field");
  IntMatrix m;
  for (const auto& row : j.at("matrix")) {
    std::vector<int> r;
    for (const auto& v : row) r.push_back(v.get<int>());
    m.push_back(std::move(r));
  }
  CartanOptions opts;
  opts.allow_decomposable = allow_decomposable;
  if (j.contains("symmetrizer")) {
    std::vector<int> r;
    for (const auto& v : j.at("symmetrizer")) r.push_back(v.get<int>());
    opts.symmetrizer_override = std::move(r);
  }
  if (j.contains("name")) opts.name = j.at("name").get<std::string>();
  return validate_cartan(m, opts);
}

CartanData load_cartan_file(const std::string& path, bool allow_decomposable) {
  std::ifstream in(path);
  if (!in) fail("IOError", "cannot read cartan file " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    fail("ParseError", std::string("bad JSON in ") + path + ": " + ex.what());
  }
  return cartan_from_json(j, allow_decomposable);
}

} // namespace qtchar
