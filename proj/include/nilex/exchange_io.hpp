#pragma once

// Text serialization of exchanges and regions, and SVG rendering.
// The text format is described in docs/exchange_format.md.

#include <iosfwd>
#include <string>

#include "nilex/exchange.hpp"

namespace nilex {

/// "a_num a_den b_num b_den".
std::string format_qphi(const QPhi& x);

void write_region(std::ostream& os, const Region& r);
void write_exchange(std::ostream& os, const PieceExchange& e);
std::string exchange_to_text(const PieceExchange& e);

/// Throws std::runtime_error with the offending line number on malformed input.
PieceExchange read_exchange(std::istream& is);
PieceExchange exchange_from_text(const std::string& text);

struct SvgOptions {
  int width = 800;
  int samples = 24;  // points per bound and strip
};
std::string render_svg(const PieceExchange& e, const SvgOptions& opt = {});

}  // namespace nilex
