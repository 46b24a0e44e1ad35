#include "lampqi/base_map.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "lampqi/text_format.hpp"

namespace lampqi {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t checked_power(std::uint32_t n, std::int64_t e) {
  std::uint64_t v = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    v *= n;
    if (v > max_window_configs) throw std::invalid_argument("window has too many configurations");
  }
  return v;
}

}  // namespace

LampConfig apply(const BaseMap& map, const LampConfig& x) {
  return std::visit(
      Overloaded{
          [&](const ShiftMap& s) { return lamp_shift(x, s.j); },
          [&](const TranslateMap& t) { return lamp_add(x, t.c); },
          [&](const InversionMap&) { return lamp_reflect(x); },
          [&](const BlockPermMap& b) {
            if (b.n != x.modulus()) throw std::domain_error("modulus mismatch");
            std::uint32_t code = 0;
            for (int i = 0; i < b.m; ++i) code = code * b.n + x.at(i);
            std::uint32_t image = b.table[code];
            LampConfig y = x;
            for (int i = b.m - 1; i >= 0; --i) {
              y.set(i, image % b.n);
              image /= b.n;
            }
            return y;
          },
          [&](const ComposeMap& c) {
            LampConfig y = x;
            for (auto it = c.parts.rbegin(); it != c.parts.rend(); ++it) y = apply(*it, y);
            return y;
          },
      },
      map.variant());
}

BlockPermMap identity_blockperm(std::uint32_t n, int m) {
  if (n < 2 || m < 1) throw std::invalid_argument("block permutation needs n >= 2 and m >= 1");
  BlockPermMap b{n, m, {}};
  b.table.resize(checked_power(n, m));
  for (std::uint32_t i = 0; i < b.table.size(); ++i) b.table[i] = i;
  return b;
}

std::uint32_t window_code(std::string_view s, std::uint32_t n) {
  std::uint32_t code = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9' || static_cast<std::uint32_t>(ch - '0') >= n) {
      throw std::invalid_argument("bad window string '" + std::string(s) + "'");
    }
    code = code * n + static_cast<std::uint32_t>(ch - '0');
  }
  return code;
}

std::string window_string(std::uint32_t code, std::uint32_t n, int m) {
  std::string s(static_cast<std::size_t>(m), '0');
  for (int i = m - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = static_cast<char>('0' + code % n);
    code /= n;
  }
  return s;
}

BlockPermMap transposition_blockperm(std::uint32_t n, std::string_view a, std::string_view b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("strings must have equal positive length");
  BlockPermMap p = identity_blockperm(n, static_cast<int>(a.size()));
  std::swap(p.table[window_code(a, n)], p.table[window_code(b, n)]);
  return p;
}

namespace {

BaseMap parse_single(std::string_view full, std::size_t offset, std::string_view part, std::uint32_t n) {
  auto fail = [&](std::size_t pos, std::string_view expected) -> ParseError {
    return ParseError("map", full, offset + pos, expected);
  };
  auto rebase = [&](const ParseError& e, std::size_t start, std::string_view expected) -> ParseError {
    return ParseError("map", full, offset + start + e.position(), expected);
  };
  auto starts = [&](std::string_view p) { return part.substr(0, p.size()) == p; };
  if (part == "invert") return InversionMap{};
  if (starts("shift:")) {
    try {
      return ShiftMap{parse_int(part.substr(6), "shift")};
    } catch (const ParseError& e) {
      throw rebase(e, 6, "integer shift");
    }
  }
  if (starts("translate:")) {
    try {
      return TranslateMap{parse_lamp_config(part.substr(10), n)};
    } catch (const ParseError& e) {
      throw rebase(e, 10, "config literal");
    }
  }
  if (starts("blockperm:")) {
    std::size_t pos = 10;
    if (part.substr(pos, 2) != "m=") throw fail(pos, "'m='");
    pos += 2;
    const std::size_t colon = part.find(':', pos);
    const std::size_t m_end = colon == std::string_view::npos ? part.size() : colon;
    std::int64_t m = 0;
    try {
      m = parse_int(part.substr(pos, m_end - pos), "block length");
    } catch (const ParseError& e) {
      throw rebase(e, pos, "block length");
    }
    if (m < 1 || m > 20) throw fail(pos, "block length between 1 and 20");
    BlockPermMap b;
    try {
      b = identity_blockperm(n, static_cast<int>(m));
    } catch (const std::invalid_argument&) {
      throw fail(pos, "block length with at most 2^22 strings");
    }
    if (colon == std::string_view::npos) return b;
    pos = colon + 1;
    std::vector<bool> seen(b.table.size(), false);
    while (pos < part.size()) {
      std::size_t end = part.find(',', pos);
      if (end == std::string_view::npos) end = part.size();
      const std::string_view item = part.substr(pos, end - pos);
      const std::size_t gt = item.find('>');
      if (gt == std::string_view::npos) throw fail(pos + item.size(), "'>' in 'source>target'");
      const std::string_view src = item.substr(0, gt), dst = item.substr(gt + 1);
      auto code_of = [&](std::string_view s, std::size_t at) {
        if (s.size() != static_cast<std::size_t>(m)) throw fail(at, "string of length m");
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s[i] < '0' || s[i] > '9' || static_cast<std::uint32_t>(s[i] - '0') >= n) {
            throw fail(at + i, "digit below n");
          }
        }
        return window_code(s, n);
      };
      const std::uint32_t a = code_of(src, pos), t = code_of(dst, pos + gt + 1);
      if (seen[a]) throw fail(pos, "each source string at most once");
      seen[a] = true;
      b.table[a] = t;
      pos = end + (end < part.size() ? 1 : 0);
      if (end < part.size() && pos == part.size()) throw fail(pos, "'source>target' after ','");
    }
    std::vector<bool> hit(b.table.size(), false);
    for (std::uint32_t t : b.table) {
      if (hit[t]) throw fail(10, "a bijection on strings (a target is hit twice)");
      hit[t] = true;
    }
    return b;
  }
  throw fail(0, "'shift:', 'translate:', 'invert' or 'blockperm:'");
}

}  // namespace

BaseMap parse_base_map(std::string_view text, std::uint32_t n) {
  std::vector<BaseMap> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    parts.push_back(parse_single(text, pos, text.substr(pos, end - pos), n));
    if (end == text.size()) break;
    pos = end + 1;
  }
  if (parts.size() == 1) return std::move(parts.front());
  return ComposeMap{std::move(parts)};
}

std::string format_base_map(const BaseMap& map) {
  return std::visit(
      Overloaded{
          [](const ShiftMap& s) { return "shift:" + std::to_string(s.j); },
          [](const TranslateMap& t) { return "translate:" + format_lamp_config(t.c); },
          [](const InversionMap&) { return std::string("invert"); },
          [](const BlockPermMap& b) {
            std::string s = "blockperm:m=" + std::to_string(b.m) + ":";
            bool first = true;
            for (std::uint32_t i = 0; i < b.table.size(); ++i) {
              if (b.table[i] == i) continue;
              if (!first) s += ',';
              first = false;
              s += window_string(i, b.n, b.m) + ">" + window_string(b.table[i], b.n, b.m);
            }
            return s;
          },
          [](const ComposeMap& c) {
            std::string s;
            for (std::size_t i = 0; i < c.parts.size(); ++i) {
              if (i) s += ';';
              s += format_base_map(c.parts[i]);
            }
            return s;
          },
      },
      map.variant());
}

std::optional<std::pair<std::int64_t, std::int64_t>> active_window(const BaseMap& map) {
  using Window = std::optional<std::pair<std::int64_t, std::int64_t>>;
  return std::visit(
      Overloaded{
          [](const ShiftMap& s) -> Window {
            if (s.j == 0) return std::pair<std::int64_t, std::int64_t>{0, 0};
            return std::nullopt;
          },
          [](const TranslateMap& t) -> Window {
            const auto h = t.c.hull();
            if (!h) return std::pair<std::int64_t, std::int64_t>{0, 0};
            return std::pair{h->first, h->second + 1};
          },
          [](const InversionMap&) -> Window { return std::nullopt; },
          [](const BlockPermMap& b) -> Window { return std::pair<std::int64_t, std::int64_t>{0, b.m}; },
          [](const ComposeMap& c) -> Window {
            std::optional<std::pair<std::int64_t, std::int64_t>> acc;
            for (const auto& part : c.parts) {
              const auto w = active_window(part);
              if (!w) return std::nullopt;
              if (w->first == w->second) continue;
              if (!acc) {
                acc = w;
              } else {
                acc->first = std::min(acc->first, w->first);
                acc->second = std::max(acc->second, w->second);
              }
            }
            if (!acc) return std::pair<std::int64_t, std::int64_t>{0, 0};
            return acc;
          },
      },
      map.variant());
}

bool window_confined(const BaseMap& map, std::int64_t lo, std::int64_t hi) {
  return std::visit(
      Overloaded{
          [&](const ShiftMap& s) { return s.j == 0 || lo >= hi; },
          [&](const TranslateMap& t) {
            const auto h = t.c.hull();
            return !h || (h->first >= lo && h->second < hi);
          },
          [&](const InversionMap&) { return lo >= hi || lo + hi == 1; },
          [&](const BlockPermMap& b) { return lo <= 0 && b.m <= hi; },
          [&](const ComposeMap& c) {
            return std::all_of(c.parts.begin(), c.parts.end(),
                               [&](const BaseMap& p) { return window_confined(p, lo, hi); });
          },
      },
      map.variant());
}

bool is_bijection_on_window(const BaseMap& map, std::int64_t lo, std::int64_t hi, std::uint32_t n) {
  if (!window_confined(map, lo, hi)) {
    throw std::domain_error("map does not keep configs inside the window");
  }
  const WindowCodec codec(n, lo, hi);
  std::vector<bool> hit(codec.size(), false);
  for (std::uint64_t c = 0; c < codec.size(); ++c) {
    const std::uint64_t image = codec.encode(apply(map, codec.decode(c)));
    if (hit[image]) return false;
    hit[image] = true;
  }
  return true;
}

WindowCodec::WindowCodec(std::uint32_t n, std::int64_t lo, std::int64_t hi) : n_(n), lo_(lo), hi_(hi) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (hi < lo) throw std::invalid_argument("window end before start");
  size_ = checked_power(n, hi - lo);
}

LampConfig WindowCodec::decode(std::uint64_t code) const {
  LampConfig c(n_);
  for (std::int64_t i = hi_ - 1; i >= lo_; --i) {
    c.set(i, static_cast<std::uint32_t>(code % n_));
    code /= n_;
  }
  return c;
}

bool WindowCodec::contains(const LampConfig& c) const {
  const auto h = c.hull();
  return !h || (h->first >= lo_ && h->second < hi_);
}

std::uint64_t WindowCodec::encode(const LampConfig& c) const {
  if (!contains(c)) throw std::domain_error("config outside window");
  std::uint64_t code = 0;
  for (std::int64_t i = lo_; i < hi_; ++i) code = code * n_ + c.at(i);
  return code;
}

std::uint64_t WindowCodec::add(std::uint64_t a, std::uint64_t b) const {
  if (n_ == 2) return a ^ b;
  std::uint64_t out = 0, place = 1;
  for (std::int64_t i = lo_; i < hi_; ++i) {
    out += ((a % n_ + b % n_) % n_) * place;
    a /= n_;
    b /= n_;
    place *= n_;
  }
  return out;
}

}  // namespace lampqi
