#pragma once

// nlohmann::json conversions for the public value types. Doubles are written
// with round-trip precision, so parse(dump(x)) == x.

#include "orthoiks/atlas.hpp"
#include "orthoiks/classify.hpp"
#include "orthoiks/geometry.hpp"
#include "orthoiks/ik.hpp"
#include "orthoiks/workspace.hpp"

#include <json.hpp>

namespace nlohmann {

template <>
struct adl_serializer<orthoiks::DhParams> {
  static orthoiks::DhParams from_json(const json& j) {
    return {j.at("a1").get<double>(), j.at("a2").get<double>(), j.at("a3").get<double>(),
            j.at("d2").get<double>(), j.value("d3", 0.0)};
  }
  static void to_json(json& j, const orthoiks::DhParams& p) {
    j = {{"a1", p.a1()}, {"a2", p.a2()}, {"a3", p.a3()}, {"d2", p.d2()}, {"d3", p.d3()}};
  }
};

}  // namespace nlohmann

namespace orthoiks {

NLOHMANN_JSON_SERIALIZE_ENUM(Verdict, {{Verdict::Binary, "binary"},
                                       {Verdict::Quaternary, "quaternary"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Rule, {{Rule::ZeroLength, "zero_length"},
                                    {Rule::NoOffsets, "no_offsets"},
                                    {Rule::A2LeA3, "a2_le_a3"},
                                    {Rule::ThresholdCompare, "threshold_compare"}})
NLOHMANN_JSON_SERIALIZE_ENUM(D3Caveat, {{D3Caveat::Exact, "exact"},
                                        {D3Caveat::SufficientOnly, "sufficient_only"},
                                        {D3Caveat::ConditionallyExact, "conditionally_exact"}})
NLOHMANN_JSON_SERIALIZE_ENUM(FeatureKind, {{FeatureKind::Cusp, "cusp"},
                                           {FeatureKind::Node, "node"},
                                           {FeatureKind::QuadruplePoint, "quadruple"}})
NLOHMANN_JSON_SERIALIZE_ENUM(BoundaryId, {{BoundaryId::WS1, "WS1"}, {BoundaryId::WS2, "WS2"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Param, {{Param::A1, "a1"},
                                     {Param::A2, "a2"},
                                     {Param::A3, "a3"},
                                     {Param::D2, "d2"},
                                     {Param::D3, "d3"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Oracle, {{Oracle::ClosedForm, "closed_form"},
                                      {Oracle::CuspScan, "cusp_scan"},
                                      {Oracle::GridIks, "grid_iks"}})

inline void to_json(nlohmann::json& j, const JointConfig& q) {
  j = {{"theta1", q.theta1}, {"theta2", q.theta2}, {"theta3", q.theta3}};
}
inline void from_json(const nlohmann::json& j, JointConfig& q) {
  q = JointConfig(j.at("theta1").get<double>(), j.at("theta2").get<double>(),
                  j.at("theta3").get<double>());
}

inline void to_json(nlohmann::json& j, const CartesianPoint& p) {
  j = {{"x", p.x}, {"y", p.y}, {"z", p.z}};
}
inline void from_json(const nlohmann::json& j, CartesianPoint& p) {
  p = {j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>()};
}

inline void to_json(nlohmann::json& j, const CrossSectionPoint& p) {
  j = {{"rho", p.rho}, {"z", p.z}};
}
inline void from_json(const nlohmann::json& j, CrossSectionPoint& p) {
  p = {j.at("rho").get<double>(), j.at("z").get<double>()};
}

inline void to_json(nlohmann::json& j, const MultiplicityInvariants& e) {
  j = {{"e1", e.e1}, {"e2", e.e2}, {"e3", e.e3}};
}
inline void from_json(const nlohmann::json& j, MultiplicityInvariants& e) {
  e = {j.at("e1").get<double>(), j.at("e2").get<double>(), j.at("e3").get<double>()};
}

inline void to_json(nlohmann::json& j, const ClassificationResult& r) {
  j = {{"verdict", r.verdict},
       {"rule", r.rule},
       {"threshold", r.threshold ? nlohmann::json(*r.threshold) : nlohmann::json(nullptr)},
       {"d3_caveat", r.d3_caveat},
       {"on_surface", r.on_surface}};
}
inline void from_json(const nlohmann::json& j, ClassificationResult& r) {
  j.at("verdict").get_to(r.verdict);
  j.at("rule").get_to(r.rule);
  const auto& t = j.at("threshold");
  r.threshold = t.is_null() ? std::nullopt : std::optional<double>(t.get<double>());
  j.at("d3_caveat").get_to(r.d3_caveat);
  j.at("on_surface").get_to(r.on_surface);
}

inline void to_json(nlohmann::json& j, const IkSolution& s) {
  j = {{"q", s.q}, {"residual", s.residual}, {"degenerate", s.degenerate}};
}
inline void from_json(const nlohmann::json& j, IkSolution& s) {
  j.at("q").get_to(s.q);
  j.at("residual").get_to(s.residual);
  j.at("degenerate").get_to(s.degenerate);
}

inline void to_json(nlohmann::json& j, const BoundaryFeature& f) {
  j = {{"kind", f.kind},
       {"location", f.location},
       {"residuals", f.residuals},
       {"branch", f.branch},
       {"theta2", f.theta2}};
}
inline void from_json(const nlohmann::json& j, BoundaryFeature& f) {
  j.at("kind").get_to(f.kind);
  j.at("location").get_to(f.location);
  j.at("residuals").get_to(f.residuals);
  j.at("branch").get_to(f.branch);
  j.at("theta2").get_to(f.theta2);
}

inline void to_json(nlohmann::json& j, const Axis& a) {
  j = {{"param", a.param}, {"lo", a.lo}, {"hi", a.hi}, {"step", a.step}};
}
inline void from_json(const nlohmann::json& j, Axis& a) {
  j.at("param").get_to(a.param);
  j.at("lo").get_to(a.lo);
  j.at("hi").get_to(a.hi);
  j.at("step").get_to(a.step);
}

inline void to_json(nlohmann::json& j, const ScanSpec& s) {
  nlohmann::json fixed = nlohmann::json::object();
  for (const auto& [p, v] : s.fixed) fixed[std::string(to_string(p))] = v;
  nlohmann::json oracles = nlohmann::json::array();
  for (Oracle o : s.oracles) oracles.push_back(o);
  j = {{"fixed", fixed},
       {"x", s.x},
       {"y", s.y},
       {"oracles", oracles},
       {"near_eps", s.near_eps},
       {"boundary_samples", s.boundary_samples},
       {"grid_res", s.grid.grid_res},
       {"threshold_bias", s.threshold_bias}};
}
inline void from_json(const nlohmann::json& j, ScanSpec& s) {
  s = ScanSpec{};
  s.fixed.clear();
  for (const auto& [k, v] : j.at("fixed").items()) {
    const auto p = parse_param(k);
    if (!p) throw std::invalid_argument("scan spec: unknown parameter " + k);
    s.fixed[*p] = v.get<double>();
  }
  j.at("x").get_to(s.x);
  j.at("y").get_to(s.y);
  s.oracles.clear();
  for (const auto& o : j.at("oracles")) s.oracles.insert(o.get<Oracle>());
  j.at("near_eps").get_to(s.near_eps);
  j.at("boundary_samples").get_to(s.boundary_samples);
  j.at("grid_res").get_to(s.grid.grid_res);
  j.at("threshold_bias").get_to(s.threshold_bias);
}

inline void to_json(nlohmann::json& j, const ScanCell& c) {
  j = {{"x", c.x},
       {"y", c.y},
       {"params", c.params},
       {"agree", c.agree},
       {"near_surface", c.near_surface}};
  for (std::size_t i = 0; i < kAllOracles.size(); ++i) {
    if (c.verdicts[i]) j["verdicts"][std::string(to_string(kAllOracles[i]))] = *c.verdicts[i];
  }
}

inline nlohmann::json scan_summary(const ScanSpec& spec, const AgreementReport& r) {
  return {{"spec", spec},
          {"counts",
           {{"total", r.total},
            {"binary", r.binary},
            {"quaternary", r.quaternary},
            {"near_surface_excluded", r.near_surface_excluded},
            {"disagreements", r.disagreements.size()}}},
          {"disagreements", r.disagreements}};
}

}  // namespace orthoiks
