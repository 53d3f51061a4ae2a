#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cv2x/sweep.hpp"

namespace cv2x {

// JSON config. Every key is optional; physical keys mirror SystemParams with powers in dBm
// and gains/biases in dB, e.g. {"p_m": 46, "g_s1": -20, "lambda_l": 10,
// "shadowing": {"m": {"enabled": true, "sigma_db": 4}}, "steps": 5}.
// Unknown keys raise ConfigError naming the valid ones.
void apply_config_text(std::string_view json_text, SweepConfig& cfg);
void apply_config_file(const std::string& path, SweepConfig& cfg);

std::vector<std::string> valid_config_keys();

}  // namespace cv2x
