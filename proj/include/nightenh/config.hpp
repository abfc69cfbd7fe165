#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nightenh/pipeline.hpp"

namespace nightenh {

/// Applies one `module.key=value` assignment. Throws ConfigError for an
/// unknown key or a malformed value.
void apply_config_entry(EnhanceConfig& cfg, std::string_view key, std::string_view value);

// Parses "key=value" into apply_config_entry.
void apply_config_assignment(EnhanceConfig& cfg, std::string_view assignment);

/// Flat key=value text file. Blank lines and lines starting with '#' are
/// skipped. Keys: tone.gamma_slope tone.offset tone.log_floor rbaf.sigma0
/// rbaf.sigma1 rbaf.edge_threshold rbaf.r_max rbaf.sigmoid_gain
/// rbaf.log_floor hist.lambda hist.gamma hist.enabled color.alpha
/// bilateral.window bilateral.sigma_d bilateral.sigma_r bilateral.enabled
/// pipeline.order.
void load_config_file(EnhanceConfig& cfg, const std::filesystem::path& path);

std::string to_config_text(const EnhanceConfig& cfg);

StageOrder parse_order(std::string_view s);
std::string_view order_name(StageOrder order);

}  // namespace nightenh
