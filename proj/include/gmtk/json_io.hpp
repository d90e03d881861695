#pragma once

#include <string>

#include "gmtk/solvers.hpp"

namespace gmtk {

/// Serializes a run record to JSON. All wall-clock measurements live under
/// the "timing" key so that comparisons can mask them; everything else is
/// deterministic for a fixed invocation.
std::string record_to_json(const RunRecord& record, int indent = 2);

RunRecord record_from_json(const std::string& text);

}  // namespace gmtk
