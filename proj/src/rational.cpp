#include "prickle/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace prickle {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

std::optional<Rat> parse_rat(std::string_view token) {
  if (token.empty()) return std::nullopt;

  bool neg = false;
  if (token.front() == '+' || token.front() == '-') {
    neg = token.front() == '-';
    token.remove_prefix(1);
  }
  if (token.empty()) return std::nullopt;

  auto slash = token.find('/');
  if (slash != std::string_view::npos) {
    std::string_view ns = token.substr(0, slash), ds = token.substr(slash + 1);
    if (!all_digits(ns) || !all_digits(ds)) return std::nullopt;
    BigInt num(std::string(ns), 10), den(std::string(ds), 10);
    if (den == 0) return std::nullopt;
    Rat q(num, den);
    q.canonicalize();
    return neg ? Rat(-q) : q;
  }

  // decimal: digits [. digits] [e|E [sign] digits]
  long exp10 = 0;
  auto epos = token.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view es = token.substr(epos + 1);
    token = token.substr(0, epos);
    bool eneg = false;
    if (!es.empty() && (es.front() == '+' || es.front() == '-')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es) || es.size() > 6) return std::nullopt;
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
  }

  std::string digits;
  auto dot = token.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(token)) return std::nullopt;
    digits = std::string(token);
  } else {
    std::string_view ip = token.substr(0, dot), fp = token.substr(dot + 1);
    if (ip.empty() && fp.empty()) return std::nullopt;
    if (!ip.empty() && !all_digits(ip)) return std::nullopt;
    if (!fp.empty() && !all_digits(fp)) return std::nullopt;
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
    if (digits.empty()) return std::nullopt;
  }

  BigInt num(digits, 10);
  Rat q(num);
  if (exp10 > 0) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10));
    q *= Rat(p);
  } else if (exp10 < 0) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-exp10));
    Rat d(1, 1);
    d = Rat(BigInt(1), p);
    d.canonicalize();
    q *= d;
  }
  q.canonicalize();
  return neg ? Rat(-q) : q;
}

std::string format_rat(const Rat& q) {
  const BigInt& den = q.get_den();
  if (den == 1) return q.get_num().get_str();

  // den = 2^a * 5^b with a short expansion -> exact decimal
  BigInt d = den;
  unsigned long twos = 0, fives = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
    d /= 5;
    ++fives;
  }
  unsigned long k = std::max(twos, fives);
  if (d == 1 && k <= 40) {
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, k);
    BigInt scaled = q.get_num() * (p10 / den);
    bool neg = scaled < 0;
    std::string s = BigInt(abs(scaled)).get_str();
    if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
    s.insert(s.size() - k, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return neg ? "-" + s : s;
  }
  return q.get_num().get_str() + "/" + den.get_str();
}

std::optional<std::int64_t> as_int64(const Rat& q) {
  if (q.get_den() != 1) return std::nullopt;
  const BigInt& n = q.get_num();
  if (!n.fits_slong_p()) return std::nullopt;
  long v = n.get_si();
  return static_cast<std::int64_t>(v);
}

} // namespace prickle
