#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lampqi/bs_number.hpp"
#include "lampqi/lamp_config.hpp"
#include "lampqi/sol.hpp"

namespace lampqi {

/// Malformed literal; `position()` is the 0-based offset of the offending
/// character in the input.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::string_view kind, std::string_view input, std::size_t position,
             std::string_view expected);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// `index:value` pairs separated by commas, e.g. `0:1,3:1`; "" is the
/// identity. Values must lie in [0, n); repeated indices are rejected.
LampConfig parse_lamp_config(std::string_view text, std::uint32_t n);
std::string format_lamp_config(const LampConfig& c);

/// `r*n^k` (e.g. `3*2^-2`), an integer (`12`), a fraction (`3/4`) or a
/// decimal (`0.75`), normalized into Z[1/n]. In `r*n^k` the base must equal n.
BSNumber parse_bs_number(std::string_view text, std::uint32_t n);

/// Canonical `r*n^k`, or `0`.
std::string format_bs_number(const BSNumber& b);

/// `x,y`.
SolVector parse_sol_vector(std::string_view text);
std::string format_sol_vector(SolVector v);

/// `a,b,c,d` for [[a,b],[c,d]].
IntMatrix2 parse_matrix(std::string_view text);

/// Signed decimal integer occupying the whole text.
std::int64_t parse_int(std::string_view text, std::string_view kind = "integer");

}  // namespace lampqi
