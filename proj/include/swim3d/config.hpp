#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "swim3d/gait.hpp"
#include "swim3d/gaitlab.hpp"
#include "swim3d/model.hpp"
#include "swim3d/optimizer.hpp"
#include "swim3d/reconstruct.hpp"

namespace swim3d {

/// Bad or incomplete configuration; the message names the offending field.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class SyntheticField { None, Constant, Rotational };

struct FieldConfig
{
  SliceSpec spec;
  int row = 1;
  SyntheticField synthetic = SyntheticField::None;
};

/**
 * @brief Parsed JSON run configuration.
 *
 * Sections: drag, gait, sim, slice, objective, optimizer, output. Each
 * section is optional at parse time; commands call require_* for the ones
 * they use.
 */
struct RunConfig
{
  std::optional<DragParams> drag;
  std::optional<Gait> gait;
  std::optional<SimConfig> sim;
  std::optional<FieldConfig> slice;
  std::optional<Objective> objective;
  std::optional<OptimizerConfig> optimizer;
  std::string output_prefix = "swim3d";

  const DragParams & require_drag() const;
  const Gait & require_gait() const;
  const SimConfig & require_sim() const;
  const FieldConfig & require_slice() const;
  const Objective & require_objective() const;
  const OptimizerConfig & require_optimizer() const;
};

/// Parses and validates a config document; throws ConfigError.
RunConfig parse_config(const std::string & text);
RunConfig load_config(const std::string & path);

}  // namespace swim3d
