#pragma once

#include "deltalab/census/census.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace deltalab {

using json = nlohmann::json;

struct RecordFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact integers are decimal strings, rationals "p/q", balls {center, radius, bits}
// with center and radius in the lossless binary form m*2^e.

inline json poly_to_json(const IntPolynomial &f) {
  json a = json::array();
  for (const auto &c : f.coeffs()) a.push_back(c.get_str());
  return a;
}

inline IntPolynomial poly_from_json(const json &j) {
  if (!j.is_array() || j.empty()) throw RecordFormatError("polynomial: expected a non-empty coefficient array");
  std::vector<BigInt> c;
  for (const auto &v : j) c.push_back(parse_integer(v.get<std::string>()));
  return IntPolynomial(std::move(c));
}

inline json ball_to_json(const RealBall &b) {
  return {{"center", b.center().to_exact_string()}, {"radius", b.radius().to_exact_string()}, {"bits", b.precision()}};
}

inline RealBall ball_from_json(const json &j) {
  long bits = j.at("bits").get<long>();
  Mpfr c = Mpfr::from_exact_string(j.at("center").get<std::string>(), bits);
  Mpfr r = Mpfr::from_exact_string(j.at("radius").get<std::string>(), RealBall::kRadiusPrec);
  return RealBall::from_center_radius(std::move(c), std::move(r));
}

inline json field_to_json(const NumberField &K) {
  json basis = json::array();
  for (const auto &row : K.order_basis) {
    json r = json::array();
    for (const auto &q : row) r.push_back(to_string(q));
    basis.push_back(r);
  }
  return {{"defining_poly", poly_to_json(K.defining_poly)},
          {"degree", K.degree},
          {"signature", {K.r1, K.r2}},
          {"discriminant", K.discriminant.get_str()},
          {"order_basis", basis}};
}

inline NumberField field_from_json(const json &j) {
  NumberField K;
  K.defining_poly = poly_from_json(j.at("defining_poly"));
  K.degree = j.at("degree").get<int>();
  K.r1 = j.at("signature").at(0).get<int>();
  K.r2 = j.at("signature").at(1).get<int>();
  K.discriminant = parse_integer(j.at("discriminant").get<std::string>());
  for (const auto &row : j.at("order_basis")) {
    std::vector<BigRational> r;
    for (const auto &q : row) r.push_back(parse_rational(q.get<std::string>()));
    K.order_basis.push_back(std::move(r));
  }
  return K;
}

inline json height_to_json(const HeightValue &h) {
  return {{"measure_poly", poly_to_json(h.measure_poly())}, {"degree", h.degree()}, {"value", ball_to_json(h.value())}};
}

inline HeightValue height_from_json(const json &j) {
  RealBall v = ball_from_json(j.at("value"));
  HeightValue h(poly_from_json(j.at("measure_poly")), j.at("degree").get<int>(), v.precision());
  return h.with_value(std::move(v));
}

inline Membership membership_from_string(const std::string &s) {
  for (auto m : {Membership::In, Membership::Out, Membership::Boundary, Membership::Failed})
    if (s == to_string(m)) return m;
  throw RecordFormatError("unknown membership '" + s + "'");
}

inline json record_to_json(const CensusRecord &r) {
  json flags = json::array();
  for (const auto &[g, m] : r.flags) flags.push_back({{"gamma", to_string(g)}, {"membership", to_string(m)}});
  return {{"class_id", r.class_id},
          {"source", r.source},
          {"field", field_to_json(r.field)},
          {"realizing_poly", poly_to_json(r.realizing_poly)},
          {"delta", height_to_json(r.delta)},
          {"ratio", r.ratio ? ball_to_json(*r.ratio) : json(nullptr)},
          {"flags", flags}};
}

inline CensusRecord record_from_json(const json &j) {
  try {
    CensusRecord r;
    r.class_id = j.at("class_id").get<std::string>();
    r.source = j.at("source").get<std::string>();
    r.field = field_from_json(j.at("field"));
    r.realizing_poly = poly_from_json(j.at("realizing_poly"));
    r.delta = height_from_json(j.at("delta"));
    if (!j.at("ratio").is_null()) r.ratio = ball_from_json(j.at("ratio"));
    for (const auto &f : j.at("flags"))
      r.flags.emplace_back(parse_rational(f.at("gamma").get<std::string>()),
                           membership_from_string(f.at("membership").get<std::string>()));
    return r;
  } catch (const json::exception &e) {
    throw RecordFormatError(std::string("census record: ") + e.what());
  }
}

/// One JSONL line, keys sorted, no trailing newline.
inline std::string record_line(const CensusRecord &r) { return record_to_json(r).dump(); }

} // namespace deltalab
