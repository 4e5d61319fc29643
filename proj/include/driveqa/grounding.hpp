#pragma once

#include <optional>
#include <string>

#include "driveqa/types.hpp"

namespace driveqa::eval {

/// Regex action grounding: pulls "Accelerator pedal N%", "Brake pedal N%"
/// and "Steering straight" / "Steering N% to the left|right" out of free
/// text, case-insensitively. Needs at least the two pedal matches, otherwise
/// returns nullopt. Missing steering reads as straight. When a reply claims
/// both pedals pressed the smaller one is zeroed.
std::optional<ControlTriple> parse_actions(const std::string& text);

}  // namespace driveqa::eval
