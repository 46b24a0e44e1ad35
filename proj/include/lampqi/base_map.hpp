#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lampqi/lamp_config.hpp"

namespace lampqi {

/// (x_i) -> (x_{i+j}).
struct ShiftMap {
  std::int64_t j = 0;
};

/// x -> x + c.
struct TranslateMap {
  LampConfig c;
};

/// (x_i) -> (x_{-i}).
struct InversionMap {};

/// Applies a permutation of the n^m strings x_0 x_1 ... x_{m-1} to the
/// window [0, m) and the identity elsewhere. `table[code]` is the image code,
/// where code reads the string as a base-n numeral with x_0 most significant
/// ("100" is lamp 0 on).
struct BlockPermMap {
  std::uint32_t n = 2;
  int m = 1;
  std::vector<std::uint32_t> table;
};

class BaseMap;

/// parts[0] o parts[1] o ... (applied right to left).
struct ComposeMap {
  std::vector<BaseMap> parts;
};

class BaseMap {
 public:
  using Variant = std::variant<ShiftMap, TranslateMap, InversionMap, BlockPermMap, ComposeMap>;

  BaseMap() : v_(ShiftMap{0}) {}
  BaseMap(ShiftMap m) : v_(std::move(m)) {}
  BaseMap(TranslateMap m) : v_(std::move(m)) {}
  BaseMap(InversionMap m) : v_(m) {}
  BaseMap(BlockPermMap m) : v_(std::move(m)) {}
  BaseMap(ComposeMap m) : v_(std::move(m)) {}

  const Variant& variant() const { return v_; }

 private:
  Variant v_;
};

LampConfig apply(const BaseMap& map, const LampConfig& x);

/// Identity block permutation of length-m strings.
BlockPermMap identity_blockperm(std::uint32_t n, int m);

/// Swaps the strings a and b (e.g. "100" and "111").
BlockPermMap transposition_blockperm(std::uint32_t n, std::string_view a, std::string_view b);

/// Code of a length-m string over digits 0..n-1; throws std::invalid_argument.
std::uint32_t window_code(std::string_view s, std::uint32_t n);
std::string window_string(std::uint32_t code, std::uint32_t n, int m);

/// Parses the map language: `shift:J`, `translate:CONFIG`, `invert`,
/// `blockperm:m=M:S>T,...` (unlisted strings fixed), and `F;G` for F o G.
/// Throws ParseError with the position of the offending character.
BaseMap parse_base_map(std::string_view text, std::uint32_t n);
std::string format_base_map(const BaseMap& map);

/// Smallest index interval [a, b) outside which the map is the identity, when
/// one exists. nullopt for nonzero shifts and for inversion.
std::optional<std::pair<std::int64_t, std::int64_t>> active_window(const BaseMap& map);

/// Whether configs supported in [lo, hi) map into configs supported there.
bool window_confined(const BaseMap& map, std::int64_t lo, std::int64_t hi);

/// Injectivity on all configs supported in [lo, hi). Throws
/// std::domain_error when the map is not confined to the window.
bool is_bijection_on_window(const BaseMap& map, std::int64_t lo, std::int64_t hi, std::uint32_t n);

/// Configs supported in [lo, hi), indexed by a base-n code with x_lo the most
/// significant digit, so code order is lexicographic string order.
class WindowCodec {
 public:
  WindowCodec(std::uint32_t n, std::int64_t lo, std::int64_t hi);

  std::uint32_t n() const { return n_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  int width() const { return static_cast<int>(hi_ - lo_); }
  std::uint64_t size() const { return size_; }

  LampConfig decode(std::uint64_t code) const;
  std::uint64_t encode(const LampConfig& c) const;  // throws if outside window
  bool contains(const LampConfig& c) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;

 private:
  std::uint32_t n_;
  std::int64_t lo_, hi_;
  std::uint64_t size_;
};

/// Upper bound on window enumerations (configs per window).
inline constexpr std::uint64_t max_window_configs = 1ULL << 22;

}  // namespace lampqi
