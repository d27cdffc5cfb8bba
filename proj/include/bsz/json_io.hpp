#pragma once

#include <string>

#include <json.hpp>

#include "bsz/arfilter.hpp"
#include "bsz/errors.hpp"
#include "bsz/fullmeasure.hpp"
#include "bsz/gdvrep.hpp"
#include "bsz/moments.hpp"
#include "bsz/soscert.hpp"
#include "bsz/splitshift.hpp"

namespace bsz {

// Ordered so that emitted keys follow insertion order.
using Json = nlohmann::ordered_json;

// Complex numbers are [re, im]; a bare number is accepted on input.
Json to_json(cplx c);
cplx complex_from_json(const Json& j);

// {"deg":[n,m],"coeffs":[[[re,im],...],...]}, row = z-power, column = w-power.
Json to_json(const BiPoly& p);
BiPoly poly_from_json(const Json& j);

// {"jmax":J,"kmax":K,"c":[...]}, rows j = -J..J, columns k = -K..K.
// Tables whose Hermitian defect exceeds 1e-8 * max|c| are rejected.
Json to_json(const MomentTable& t);
MomentTable moments_from_json(const Json& j);

// {"deg":[n,m],"coeffs":[...]}, rows j = -n..n, columns k = -m..m.
Json to_json(const TrigPoly& t);
TrigPoly trig_from_json(const Json& j);

Json to_json(const StratificationReport& r);
Json to_json(const SosCertificate& c);
Json to_json(const GeometryReport& g);
Json to_json(const DetRep& d);
Json to_json(const FullMeasureReport& r);
Json to_json(const ArSolution& s);
Json to_json(const Error& e);

// Serializes with every floating-point number at 17 significant digits.
// indent < 0 gives a single line.
std::string dump(const Json& j, int indent = 2);

}  // namespace bsz
