#ifndef SECSWIPT_JSON_IO_HPP
#define SECSWIPT_JSON_IO_HPP

#include <json.hpp>

#include <Eigen/Dense>

#include "secswipt/baselines.hpp"
#include "secswipt/channel.hpp"
#include "secswipt/metrics.hpp"
#include "secswipt/sca.hpp"

namespace secswipt {

// Complex vectors serialize as arrays of [re, im] pairs.
nlohmann::json complex_vector_to_json(const Eigen::VectorXcd& v);
Eigen::VectorXcd complex_vector_from_json(const nlohmann::json& j);

nlohmann::json channel_set_to_json(const ChannelSet& ch);
ChannelSet channel_set_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const BeamformingSolution& s);
BeamformingSolution solution_from_json(const nlohmann::json& j);

nlohmann::json audit_to_json(const ConstraintAudit& a);

// Full per-iteration trace plus the audited endpoint of one scheme run.
nlohmann::json outcome_to_json(const SchemeOutcome& o);

} // namespace secswipt

#endif
