#include "bnls/report.hpp"

#include <cmath>

namespace bnls {
namespace {

// NaN and infinities are not JSON numbers.
Json number(Real v) {
  const double d = static_cast<double>(v);
  return std::isfinite(d) ? Json(d) : Json(nullptr);
}

template <class T>
Json numbers(const std::vector<T>& values) {
  Json out = Json::array();
  for (const T& v : values) out.push_back(number(v));
  return out;
}

Json optional_number(const std::optional<Real>& v) {
  return v ? number(*v) : Json(nullptr);
}

Json triple(const TripleCheck& t) {
  return {{"i", t.i}, {"j", t.j}, {"k", t.k}, {"margin", number(t.margin)}};
}

Json pair(const PairCheck& p) {
  return {{"i", p.i}, {"j", p.j}, {"theta", number(p.theta)}, {"margin", number(p.margin)}};
}

}  // namespace

Json to_json(const LandscapeParams& p) {
  return {{"N", p.dim}, {"q", p.q}, {"mu", p.mu}, {"C_gn", p.c_gn}, {"S_sob", p.s_sob}};
}

Json to_json(const MassThreshold& t) {
  return {{"M", t.M}, {"c0", t.c0}, {"rho0", t.rho0}};
}

Json to_json(const NormBundle& b) {
  return {{"mass", number(b.mass)},
          {"bend", number(b.bend)},
          {"subcrit", number(b.subcrit)},
          {"crit", number(b.crit)}};
}

Json to_json(const GroundState& g) {
  return {{"c", g.c},
          {"m", number(g.m)},
          {"lambda", number(g.lambda)},
          {"bend", number(g.bend)},
          {"rho0", number(g.rho0)},
          {"q_residual", number(g.q_residual)},
          {"grad_residual", number(g.grad_residual)},
          {"iters", g.iters},
          {"safeguard_hits", g.safeguard_hits},
          {"constraint_active", g.constraint_active},
          {"grid", {{"n", g.field.grid().size()}, {"r_max", g.field.grid().r_max()}}}};
}

Json to_json(const FiberAnalysis& a) {
  auto kind = [](const std::optional<CriticalKind>& k) {
    return k ? Json(std::string(kind_name(*k))) : Json(nullptr);
  };
  return {{"s_turn", number(a.s_turn)},
          {"xi_at_turn", number(a.xi_at_turn)},
          {"s1", optional_number(a.s1)},
          {"kind1", kind(a.kind1)},
          {"psi_at_s1", optional_number(a.psi_at_s1)},
          {"s2", optional_number(a.s2)},
          {"kind2", kind(a.kind2)},
          {"psi_at_s2", optional_number(a.psi_at_s2)}};
}

Json to_json(const SweepReport& r) {
  const SweepFlags& f = r.flags;
  Json sub = Json::array();
  for (const TripleCheck& t : f.subadditivity_violations) sub.push_back(triple(t));
  Json hom = Json::array();
  for (const PairCheck& p : f.subhomogeneity_violations) hom.push_back(pair(p));
  Json out = {
      {"c", numbers(r.c)},
      {"m", numbers(r.m)},
      {"lambda", numbers(r.lambda)},
      {"bend", numbers(r.bend)},
      {"q_residual", numbers(r.q_residual)},
      {"iters", r.iters},
      {"flags",
       {{"monotone_decreasing", f.monotone_decreasing},
        {"monotone_violations", f.monotone_violations},
        {"all_negative", f.all_negative},
        {"nonnegative", f.nonnegative},
        {"triples_checked", f.triples_checked},
        {"subadditivity_violations", sub},
        {"worst_triple", f.worst_triple ? triple(*f.worst_triple) : Json(nullptr)},
        {"pairs_checked", f.pairs_checked},
        {"subhomogeneity_violations", hom},
        {"worst_pair", f.worst_pair ? pair(*f.worst_pair) : Json(nullptr)},
        {"boundary_samples", r.boundary_samples},
        {"boundary_positive_samples", r.boundary_positive_samples}}},
      {"complete", r.complete}};
  if (r.failure_kind) {
    out["failure"] = error_record(*r.failure_kind, r.failure);
  }
  return out;
}

Json to_json(const CheckResult& c) {
  return {{"check", c.name},
          {"pass", c.pass},
          {"value", number(c.value)},
          {"limit", c.limit},
          {"detail", c.detail}};
}

Json error_record(ErrorKind kind, const std::string& message) {
  return {{"error", std::string(kind_name(kind))},
          {"message", message},
          {"exit_code", exit_code(kind)}};
}

}  // namespace bnls
