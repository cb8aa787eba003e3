#pragma once

#include <string>

#include "json.hpp"

#include "dmodkit/bernstein.hpp"
#include "dmodkit/bernstein_sato.hpp"
#include "dmodkit/charp.hpp"
#include "dmodkit/filtration.hpp"
#include "dmodkit/invariants.hpp"
#include "dmodkit/localization.hpp"
#include "dmodkit/simplicity.hpp"

namespace dmodkit {

using Json = nlohmann::ordered_json;

// Rationals are always written as strings ("3/2") so that reports are exact.
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);

// [{"coeff": "3/2", "exps": [2, 0]}, ...]
Json poly_json(const QPoly& f);
QPoly poly_from_json(const Json& j, std::size_t nvars);
// [{"coeff": "1", "x": [..], "d": [..]}, ...]
Json op_json(const QWeyl& op);
QWeyl op_from_json(const Json& j, std::size_t nvars);
Json op_json(const SWeyl& op);

// matrix rows of rationals (strings or integers)
RationalMatrix matrix_from_json(const Json& j);
Json matrix_json(const RationalMatrix& m);
// {"matrices": [...]} or a bare list of matrices; closed under products
FiniteMatrixGroup group_from_json(const Json& j, std::size_t max_order = 1024);
Json group_json(const FiniteMatrixGroup& g);

// {"p": 2, "vars": ["x","y"], "monomial": [[1,1]]} or {"p": 3, "vars":
// [...], "principal": "b^2 - a*c"}; a bare string names a fixture
Presentation presentation_from_json(const Json& j);
Json presentation_json(const Presentation& pres);

Json spec_json(const WeightedRingSpec& spec);
Json dims_json(const DimSequence& seq);
Json estimate_json(const GrowthEstimate& est);
Json bernstein_json(const BernsteinReport& rep);
Json growth_json(const GrowthReport& rep);
Json bs_json(const BSResult& res);
Json differential_power_json(const DifferentialPowerReport& rep);
Json signature_json(const SignatureEstimate& est);
Json reduction_json(const ReductionCertificate& cert);
Json membership_json(const MembershipCertificate& cert);
Json min_constant_json(const std::vector<MinConstantRow>& rows);
Json splitting_json(const SplittingReport& rep);
Json ffrt_json(const VeroneseFFRT& res);
Json localized_json(const LocalizedElement& v);
Json fs_json(const FsElement& u);

std::string fp_poly_string(const FpPoly& f, const std::vector<std::string>& names);

}  // namespace dmodkit
