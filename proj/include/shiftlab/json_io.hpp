#pragma once

#include "shiftlab/families.hpp"

#include <json.hpp>

#include <variant>

namespace shiftlab {

using json = nlohmann::ordered_json;

// Exact values travel as "p/q" strings. Approx values are written as "~" plus
// a decimal and read back on the approx track.
json to_json(const Scalar& x);
Scalar scalar_from_json(const json& j);

json to_json(const Measure1D& m);
Measure1D measure_from_json(const json& j);

// closed_form tails serialize by name only and do not parse back.
json to_json(const WeightSeq& w);
WeightSeq seq_from_json(const json& j);

// The rectangle [0,K1]x[0,K2] of squared weights; the field must be flat past
// it for the round trip to be exact.
json field_to_json(const WeightField& t, long k1, long k2);
WeightField field_from_json(const json& j);
// Squared weights agree on [0,K1]x[0,K2].
bool same_weights(const WeightField& a, const WeightField& b, long k1, long k2);

using FamilyParams = std::variant<Figure0Params, ExamParams, FlatParams>;

// {"family":"figure0","a":"17/20","kappa":"99/100"}; squared values may be
// given as "a_sq" etc. instead.
FamilyParams family_from_json(const json& j);
json to_json(const FamilyParams& p);
const char* family_name(const FamilyParams& p);

json to_json(const Verdict& v);
json to_json(const Figure0Class& c);
json to_json(const VerifyReport& r);

}  // namespace shiftlab
