#pragma once

#include <iosfwd>
#include <string>

#include "adicscope/diagram.hpp"

namespace adicscope {

/// Parse the line-oriented diagram format (see README). Throws InputError
/// with the offending line number on malformed input.
DiagramSpec parse_spec(std::istream& in);
DiagramSpec parse_spec_string(const std::string& text);
DiagramSpec parse_spec_file(const std::string& path);

/// Inverse of parse_spec; run-length blocks are written verbatim.
std::string serialize_spec(const DiagramSpec& spec);

}  // namespace adicscope
