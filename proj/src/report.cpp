#include "mbstat/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <cstdio>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "mbstat/errors.hpp"

namespace mbstat::report {

using rolling::Stat;

namespace {

constexpr std::size_t kFlushThreshold = 1 << 20;
constexpr std::size_t kWindowSlack = 1 << 14;

constexpr std::string_view kCsvHeader =
    "t_center,N,alpha,beta,stat_family,market_value,frequency_value,a1,a2,h1,h2,denominator,"
    "cov_CC,cov_UC,cov_CU,cov_UU_or_CoCo_or_UCo\n";

void append_json_string(std::string& out, std::string_view s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof esc, "\\u%04x", static_cast<unsigned>(ch));
          out += esc;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void append_integer(std::string& out, std::int64_t v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

constexpr char kDigitPairs[] =
    "00010203040506070809101112131415161718192021222324252627282930313233343536373839"
    "40414243444546474849505152535455565758596061626364656667686970717273747576777879"
    "8081828384858687888990919293949596979899";

/// Writes the decimal digits of v so that they end at `last`; returns the first.
char* write_digits(char* last, std::uint64_t v) {
  while (v >= 100) {
    last -= 2;
    std::memcpy(last, kDigitPairs + 2 * (v % 100), 2);
    v /= 100;
  }
  if (v >= 10) {
    last -= 2;
    std::memcpy(last, kDigitPairs + 2 * v, 2);
  } else {
    *--last = static_cast<char>('0' + v);
  }
  return last;
}

/// Shortest round-trip digits, laid out as plain decimal for decimal exponents
/// in [-6, 21) and as d.ddde±XX otherwise.
char* write_shortest(char* first, double x) {
  const auto dec = fmt::detail::dragonbox::to_decimal(x);
  char buf[20];
  const char* digits = write_digits(buf + sizeof buf, dec.significand);
  const auto n = static_cast<int>(buf + sizeof buf - digits);
  const int point = n + dec.exponent;  // digits before the decimal point
  char* p = first;
  if (x < 0) *p++ = '-';
  if (point > 0 && point <= 21) {
    if (dec.exponent >= 0) {
      std::memcpy(p, digits, n);
      p += n;
      std::memset(p, '0', dec.exponent);
      return p + dec.exponent;
    }
    std::memcpy(p, digits, point);
    p += point;
    *p++ = '.';
    std::memcpy(p, digits + point, n - point);
    return p + (n - point);
  }
  if (point > -6 && point <= 0) {
    *p++ = '0';
    *p++ = '.';
    std::memset(p, '0', -point);
    p += -point;
    std::memcpy(p, digits, n);
    return p + n;
  }
  *p++ = digits[0];
  if (n > 1) {
    *p++ = '.';
    std::memcpy(p, digits + 1, n - 1);
    p += n - 1;
  }
  int e = point - 1;
  *p++ = 'e';
  *p++ = e < 0 ? '-' : '+';
  if (e < 0) e = -e;
  if (e < 10) *p++ = '0';
  return std::to_chars(p, p + 4, e).ptr;
}

char* format_number(char* first, double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteResult, "statistic is not finite");
  // Integral values (grid times, exact moments) print without an exponent.
  if (x == std::trunc(x) && std::fabs(x) < 1e15) {
    return std::to_chars(first, first + 24, static_cast<std::int64_t>(x)).ptr;
  }
  return write_shortest(first, x);
}

/// A number formatted once and copied into every record that shows it.
struct Text {
  char s[32]{};
  std::uint8_t n = 0;

  Text() = default;
  explicit Text(double x) { n = static_cast<std::uint8_t>(format_number(s, x) - s); }
  std::string_view view() const { return {s, n}; }
};

struct FamilyText {
  Text market, frequency, m1, m2, denominator, cc, bc, cb, bb;

  explicit FamilyText(const rolling::FamilyResult& f)
      : market(f.closed.market_corr),
        frequency(f.freq_value),
        m1(f.closed.m1),
        m2(f.closed.m2),
        denominator(f.closed.denominator),
        cc(f.closed.cov_cc),
        bc(f.closed.cov_bc),
        cb(f.closed.cov_cb),
        bb(f.closed.cov_bb) {}
};

}  // namespace

struct Writer::Record {
  std::string_view family;
  const Text* t_center;
  const Text* market;
  const Text* frequency;
  const Text *a1, *a2, *h1, *h2;
  const FamilyText* closed;
};

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw Error(ErrorCode::InvalidConfig, "unknown report format '" + std::string(name) + "'");
}

void append_number(std::string& out, double x) {
  char buf[32];
  out.append(buf, format_number(buf, x));
}

Writer::Writer(std::ostream& out, Format format, RunInfo info)
    : out_(out), format_(format), info_(std::move(info)), buf_(kFlushThreshold + kWindowSlack) {
  const auto& c = info_.config;
  const bool json = format_ == Format::json;
  std::string head;
  if (!json) {
    head = kCsvHeader;
  } else {
    head += "{\"schema_version\":";
    append_integer(head, kSchemaVersion);
    head += ",\"asset1\":";
    append_json_string(head, info_.asset1);
    head += ",\"asset2\":";
    append_json_string(head, info_.asset2);
    head += ",\"alpha\":";
    append_integer(head, c.alpha);
    head += ",\"beta\":";
    append_integer(head, c.beta);
    head += ",\"window\":";
    append_integer(head, static_cast<std::int64_t>(c.window));
    head += ",\"stride\":";
    append_integer(head, static_cast<std::int64_t>(c.stride));
    head += ",\"records\":[";
  }
  append(head);

  prefix_ = json ? ",\"N\":" : ",";
  append_integer(prefix_, static_cast<std::int64_t>(c.window));
  prefix_ += json ? ",\"alpha\":" : ",";
  append_integer(prefix_, c.alpha);
  prefix_ += json ? ",\"beta\":" : ",";
  append_integer(prefix_, c.beta);
  prefix_ += json ? ",\"stat_family\":\"" : ",";
  // Seven records, each at most sixteen numbers plus keys, prefix and family.
  window_bound_ = 7 * (16 * sizeof(Text::s) + 512 + prefix_.size());
}

void Writer::append(std::string_view s) {
  if (used_ + s.size() > buf_.size()) buf_.resize(std::max(2 * buf_.size(), used_ + s.size()));
  std::memcpy(buf_.data() + used_, s.data(), s.size());
  used_ += s.size();
}

namespace {

/// Unchecked output cursor; callers reserve room for a whole window first.
struct Cursor {
  char* p;

  template <std::size_t N>
  void lit(const char (&s)[N]) {
    std::memcpy(p, s, N - 1);
    p += N - 1;
  }
  void str(std::string_view s) {
    std::memcpy(p, s.data(), s.size());
    p += s.size();
  }
  void text(const Text& t) {
    std::memcpy(p, t.s, sizeof t.s);
    p += t.n;
  }
  void json_opt(const Text* t) {
    if (t) {
      text(*t);
    } else {
      lit("null");
    }
  }
  void csv_opt(const Text* t) {
    if (t) text(*t);
  }
};

}  // namespace

void Writer::write_record(const Record& r) {
  const FamilyText& f = *r.closed;
  Cursor c{buf_.data() + used_};
  if (format_ == Format::json) {
    if (records_ == 0) {
      c.lit("\n{\"t_center\":");
    } else {
      c.lit(",\n{\"t_center\":");
    }
    c.text(*r.t_center);
    c.str(prefix_);
    c.str(r.family);
    c.lit("\",\"market_value\":");
    c.text(*r.market);
    c.lit(",\"frequency_value\":");
    c.text(*r.frequency);
    c.lit(",\"a1\":");
    c.json_opt(r.a1);
    c.lit(",\"a2\":");
    c.json_opt(r.a2);
    c.lit(",\"h1\":");
    c.json_opt(r.h1);
    c.lit(",\"h2\":");
    c.json_opt(r.h2);
    c.lit(",\"denominator\":");
    c.text(f.denominator);
    c.lit(",\"cov_CC\":");
    c.text(f.cc);
    c.lit(",\"cov_UC\":");
    c.text(f.bc);
    c.lit(",\"cov_CU\":");
    c.text(f.cb);
    c.lit(",\"cov_UU_or_CoCo_or_UCo\":");
    c.text(f.bb);
    c.lit("}");
  } else {
    c.text(*r.t_center);
    c.str(prefix_);
    c.str(r.family);
    c.lit(",");
    c.text(*r.market);
    c.lit(",");
    c.text(*r.frequency);
    c.lit(",");
    c.csv_opt(r.a1);
    c.lit(",");
    c.csv_opt(r.a2);
    c.lit(",");
    c.csv_opt(r.h1);
    c.lit(",");
    c.csv_opt(r.h2);
    c.lit(",");
    c.text(f.denominator);
    c.lit(",");
    c.text(f.cc);
    c.lit(",");
    c.text(f.bc);
    c.lit(",");
    c.text(f.cb);
    c.lit(",");
    c.text(f.bb);
    c.lit("\n");
  }
  used_ = static_cast<std::size_t>(c.p - buf_.data());
  ++records_;
}

void Writer::write(const rolling::WindowResult& w) {
  const auto& stats = info_.config.stats;
  if (used_ + window_bound_ > buf_.size()) buf_.resize(used_ + window_bound_);
  const Text t(w.t_center);
  const bool joint = stats.has(Stat::joint_moments);
  std::optional<FamilyText> price, ret;
  if (stats.has(Stat::price_corr) || joint) price.emplace(w.price_corr);
  if (stats.has(Stat::return_corr) || joint) ret.emplace(w.return_corr);

  if (stats.has(Stat::price_corr)) {
    const FamilyText& f = *price;
    write_record({"price_corr", &t, &f.market, &f.frequency, &f.m1, &f.m2, nullptr, nullptr, &f});
  }
  if (stats.has(Stat::return_corr)) {
    const FamilyText& f = *ret;
    write_record({"return_corr", &t, &f.market, &f.frequency, nullptr, nullptr, &f.m1, &f.m2, &f});
  }
  if (stats.has(Stat::price_return_corr)) {
    const FamilyText f(w.price_return_corr);
    write_record(
        {"price_return_corr", &t, &f.market, &f.frequency, &f.m1, nullptr, nullptr, &f.m2, &f});
  }
  if (stats.has(Stat::price_vol)) {
    const FamilyText f(w.price_vol);
    write_record({"price_vol", &t, &f.market, &f.frequency, &f.m1, nullptr, nullptr, nullptr, &f});
  }
  if (stats.has(Stat::return_vol)) {
    const FamilyText f(w.return_vol);
    write_record({"return_vol", &t, &f.market, &f.frequency, nullptr, nullptr, &f.m1, nullptr, &f});
  }
  if (joint) {
    const Text pm(joint_moment_from_corr(w.price_corr.closed));
    const Text pf(w.price_corr.freq_joint);
    const FamilyText& p = *price;
    write_record({"joint_price_moment", &t, &pm, &pf, &p.m1, &p.m2, nullptr, nullptr, &p});
    const Text qm(joint_moment_from_corr(w.return_corr.closed));
    const Text qf(w.return_corr.freq_joint);
    const FamilyText& q = *ret;
    write_record({"joint_return_moment", &t, &qm, &qf, nullptr, nullptr, &q.m1, &q.m2, &q});
  }
  if (used_ >= kFlushThreshold) flush();
}

void Writer::flush() {
  out_.write(buf_.data(), static_cast<std::streamsize>(used_));
  used_ = 0;
}

void Writer::finish() {
  if (format_ == Format::json) append("\n]}\n");
  flush();
  out_.flush();
}

}  // namespace mbstat::report
