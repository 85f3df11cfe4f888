#pragma once

#include <span>
#include <string>

#include "vmlp/algebra.hpp"
#include "vmlp/network.hpp"
#include "vmlp/train.hpp"

namespace vmlp {

// Algebra JSON schema: {"dim": n, "constants": n x n x n nested arrays indexed
// [i][j][k], "labels": optional, "name": optional}. Parse and shape errors
// carry the input position or the offending key.
Algebra parse_algebra_json(const std::string& text, const std::string& origin);
Algebra load_algebra_json(const std::string& path);
std::string algebra_to_json(const Algebra& a);

// Checkpoint JSON: algebra (catalog name, or dim + constants for custom
// ones), widths, output_mode, activation, and the three flat parameter
// arrays in layout order (hidden_weights by (i, j, component), hidden_biases
// by (i, component), output_weights by (i) or (i, component)).
void save_checkpoint(const VMlp& net, const std::string& path);
VMlp load_checkpoint(const std::string& path);

// Curve CSV: header `epoch,mse`, one row per epoch, fixed-point decimal with
// at least 10 significant digits, newline-terminated.
std::string curve_to_csv(std::span<const EpochRecord> curve);
void write_curve_csv(const std::string& path, std::span<const EpochRecord> curve);

std::string read_text(const std::string& path);

// Writes to a sibling temp file and renames it into place, so readers never
// observe a partial file.
void write_text_atomic(const std::string& path, const std::string& text);

} // namespace vmlp
