#pragma once

#include "sfar/montecarlo.hpp"
#include "sfar/recon.hpp"
#include "sfar/sampling.hpp"
#include "sfar/types.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace sfar {

using json = nlohmann::ordered_json;

// Wire schemas:
//   model:   {"nx":.., "ny":.., "components":[{"amp":.., "kx":.., "ky":..}]}
//   support: {"nx":.., "ny":.., "positions":[[x,y],..]}
//   result:  {"nx","ny","bins":[[kx,ky],..], "coefficients":[[re,im],..],
//             "iterations":[..], "converged":bool}

json model_to_json(const SignalModel& model);
SignalModel model_from_json(const json& doc);

json support_to_json(const SampleSupport& support);
SampleSupport support_from_json(const json& doc);

json result_to_json(const ReconstructionResult& result, GridDims dims);

json report_to_json(const TrialReport& report);

/// One CSV row per trial; stable column set across experiment kinds.
std::string report_to_csv(const TrialReport& report);

}  // namespace sfar
