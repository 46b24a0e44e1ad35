#include "lampqi/text_format.hpp"

#include <cctype>
#include <set>
#include <vector>

namespace lampqi {

ParseError::ParseError(std::string_view kind, std::string_view input, std::size_t position,
                       std::string_view expected)
    : std::invalid_argument("malformed " + std::string(kind) + " '" + std::string(input) +
                            "' at position " + std::to_string(position) + ": expected " +
                            std::string(expected)),
      position_(position) {}

namespace {

// Cursor over a literal with position-annotated failures.
class Scanner {
 public:
  Scanner(std::string_view kind, std::string_view text) : kind_(kind), text_(text) {}

  bool done() const { return pos_ == text_.size(); }
  std::size_t pos() const { return pos_; }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(std::string_view expected) const {
    throw ParseError(kind_, text_, pos_, expected);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("'") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  BigInt big_integer(bool allow_sign = true) {
    bool neg = false;
    if (allow_sign && (peek() == '-' || peek() == '+')) neg = text_[pos_++] == '-';
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("digit");
    BigInt v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_++] - '0');
    }
    return neg ? BigInt(-v) : v;
  }

  std::int64_t integer(bool allow_sign = true) {
    const std::size_t start = pos_;
    const BigInt v = big_integer(allow_sign);
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) {
      pos_ = start;
      fail("integer within 64 bits");
    }
    return v.convert_to<std::int64_t>();
  }

  void finish() {
    if (!done()) fail("end of input");
  }

 private:
  std::string_view kind_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LampConfig parse_lamp_config(std::string_view text, std::uint32_t n) {
  LampConfig c(n);
  Scanner s("config", text);
  if (s.done()) return c;
  std::set<std::int64_t> seen;
  while (true) {
    const std::size_t at = s.pos();
    const std::int64_t index = s.integer();
    if (!seen.insert(index).second) throw ParseError("config", text, at, "distinct indices");
    s.expect(':');
    const std::size_t vat = s.pos();
    const std::int64_t value = s.integer(false);
    if (value >= static_cast<std::int64_t>(n)) {
      throw ParseError("config", text, vat, "value below modulus " + std::to_string(n));
    }
    c.set(index, static_cast<std::uint32_t>(value));
    if (s.done()) break;
    s.expect(',');
  }
  return c;
}

std::string format_lamp_config(const LampConfig& c) {
  std::string out;
  for (const auto& e : c.entries()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e.index) + ':' + std::to_string(e.value);
  }
  return out;
}

BSNumber parse_bs_number(std::string_view text, std::uint32_t n) {
  Scanner s("Z[1/n] number", text);
  bool neg = false;
  if (s.accept('-')) {
    neg = true;
  } else {
    s.accept('+');
  }
  const BigInt whole = s.big_integer(false);
  BigInt num = neg ? BigInt(-whole) : whole;

  if (s.accept('*')) {
    const std::size_t at = s.pos();
    const std::int64_t base = s.integer(false);
    if (base != static_cast<std::int64_t>(n)) {
      throw ParseError("Z[1/n] number", text, at, "base " + std::to_string(n));
    }
    s.expect('^');
    const std::int64_t k = s.integer();
    s.finish();
    return bs_normalize(num, k, n);
  }
  if (s.accept('/')) {
    const std::size_t at = s.pos();
    const BigInt den = s.big_integer(false);
    if (den == 0) throw ParseError("Z[1/n] number", text, at, "nonzero denominator");
    s.finish();
    try {
      return bs_from_rational(Rational(num, den), n);
    } catch (const std::domain_error&) {
      throw ParseError("Z[1/n] number", text, at, "denominator dividing a power of " + std::to_string(n));
    }
  }
  if (s.accept('.')) {
    const std::size_t at = s.pos();
    BigInt frac = 0, scale = 1;
    if (!std::isdigit(static_cast<unsigned char>(s.peek()))) s.fail("digit");
    while (std::isdigit(static_cast<unsigned char>(s.peek()))) {
      frac = frac * 10 + (s.peek() - '0');
      scale *= 10;
      s.accept(s.peek());
    }
    s.finish();
    const Rational value = Rational(whole) + Rational(frac, scale);
    try {
      return bs_from_rational(neg ? Rational(-value) : value, n);
    } catch (const std::domain_error&) {
      throw ParseError("Z[1/n] number", text, at, "decimal lying in Z[1/" + std::to_string(n) + "]");
    }
  }
  s.finish();
  return bs_normalize(num, 0, n);
}

std::string format_bs_number(const BSNumber& b) {
  if (b.is_zero()) return "0";
  return to_string(b.r()) + "*" + std::to_string(b.base()) + "^" + std::to_string(b.k());
}

SolVector parse_sol_vector(std::string_view text) {
  Scanner s("vector", text);
  SolVector v;
  v.x = s.integer();
  s.expect(',');
  v.y = s.integer();
  s.finish();
  return v;
}

std::string format_sol_vector(SolVector v) { return std::to_string(v.x) + "," + std::to_string(v.y); }

IntMatrix2 parse_matrix(std::string_view text) {
  Scanner s("matrix", text);
  IntMatrix2 m;
  m.a = s.integer();
  s.expect(',');
  m.b = s.integer();
  s.expect(',');
  m.c = s.integer();
  s.expect(',');
  m.d = s.integer();
  s.finish();
  return m;
}

std::int64_t parse_int(std::string_view text, std::string_view kind) {
  Scanner s(kind, text);
  const std::int64_t v = s.integer();
  s.finish();
  return v;
}

}  // namespace lampqi
