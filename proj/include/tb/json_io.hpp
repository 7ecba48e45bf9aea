#pragma once

#include <json.hpp>

#include "tb/acceptance.hpp"
#include "tb/bundle.hpp"
#include "tb/catalog.hpp"
#include "tb/error.hpp"
#include "tb/feasibility.hpp"
#include "tb/manifold.hpp"
#include "tb/oracle.hpp"

namespace tb {

using Json = nlohmann::ordered_json;

Int int_from_json(const Json& j);
Json int_to_json(const Int& x);

IntVec vec_from_json(const Json& j);
Json vec_to_json(const IntVec& v);
IntMat mat_from_json(const Json& j);
Json mat_to_json(const IntMat& m);

bool is_profile_json(const Json& j);
Summand summand_from_json(const Json& j, int dim);
Json summand_to_json(const Summand& s);
ConnectedSumExpr expr_from_json(const Json& j);
Json expr_to_json(const ConnectedSumExpr& e);
BettiProfile profile_from_json(const Json& j);
Json profile_to_json(const BettiProfile& p);
// Accepts either encoding; expressions are converted through their Betti profile.
BettiProfile any_profile_from_json(const Json& j);

FourManifoldSpec four_from_json(const Json& j);
Json four_to_json(const FourManifoldSpec& f);

Json error_to_json(const Error& e);
Json report_to_json(const FeasibilityReport& r);
Json tower_to_json(const Tower& t);
Json cohom4_to_json(const Cohom4Witness& w);
Json witness_to_json(const CircleWitness& w);
Json stabilization_to_json(const StabilizationResult& s);
Json rows_to_json(const std::vector<TableRow>& rows);
Json sweep_to_json(const SweepReport& s);
Json acceptance_to_json(const std::vector<CriterionResult>& results);

}  // namespace tb
