// JSON forms of library results.

#ifndef STABREG_SERIALIZE_HPP_
#define STABREG_SERIALIZE_HPP_

#include <span>

#include <nlohmann/json.hpp>

#include "stabreg/applications.hpp"
#include "stabreg/bohr.hpp"
#include "stabreg/regularity.hpp"
#include "stabreg/stability.hpp"

namespace stabreg {

using Json = nlohmann::json;

Json subset_json(const Subset& s);
Subset subset_from_json(const GroupPtr& group, const Json& j);

// {descriptor, irrep_multiset, delta, kind, m, realized_members, ...}
Json bohr_json(const BohrSpec& spec);
// Rebuilds tau from the irrep list and checks the realized set matches.
// Throws std::runtime_error on mismatch.
BohrSpec bohr_from_json(const Json& j, std::span<const IrrepData> irreps);

// {k, epsilon, a, b, min_gap}
Json witness_json(const LadderWitness& w);
LadderWitness witness_from_json(const Json& j);

// {bohr_spec, epsilon, zeta_value, max_defect, per_translate}
Json certificate_json(const RegularityCertificate& c);
RegularityCertificate certificate_from_json(const Json& j, const GroupPtr& group,
                                            std::span<const IrrepData> irreps);

Json separated_cover_json(const SeparatedCover& c);
Json bogolyubov_json(const BogolyubovResult& r);
Json two_set_json(const TwoSetResult& r);
Json four_product_json(const FourProductResult& r);
Json quasirandom_json(const QuasirandomResult& r);
Json shift_json(const ShiftResult& r);
Json obstruction_json(const ObstructionReport& r);

}  // namespace stabreg

#endif  // STABREG_SERIALIZE_HPP_
