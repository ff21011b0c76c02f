#pragma once

// JSON encodings (schema "padic-cells/1"). Integers and rationals that may
// exceed a machine word are written as decimal strings.

#include <json.hpp>

#include "padic/cells.hpp"
#include "padic/kgroup.hpp"
#include "padic/measure.hpp"

namespace padic {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "padic-cells/1";
/// Digits printed for centers that are roots known only approximately.
inline constexpr std::int64_t kCenterDigits = 20;

Json to_json(const MRange& r);
Json to_json(const ResidueSet& r);
Json to_json(const Point& c);
Json to_json(const Cell1& c);
Json to_json(const Decomposition& d);
Json to_json(const ZetaFn& z);
Json to_json(const K0Element& e);
Json to_json(const K0Normal& n);

}  // namespace padic
