#pragma once

#include <json.hpp>
#include <string>

#include "bnls/error.hpp"
#include "bnls/fiber.hpp"
#include "bnls/sweep.hpp"
#include "bnls/verify.hpp"

namespace bnls {

using Json = nlohmann::ordered_json;

Json to_json(const LandscapeParams& params);
Json to_json(const MassThreshold& threshold);
Json to_json(const NormBundle& bundle);
Json to_json(const GroundState& state);
Json to_json(const FiberAnalysis& analysis);
Json to_json(const SweepReport& report);
Json to_json(const CheckResult& check);

/// {"error": kind, "message": ..., "exit_code": ...}
Json error_record(ErrorKind kind, const std::string& message);

}  // namespace bnls
