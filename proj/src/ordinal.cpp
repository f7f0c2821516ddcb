#include "ordlab/ordinal.hpp"

#include <algorithm>
#include <cctype>

#include "ordlab/errors.hpp"

namespace ordlab {

Ordinal Ordinal::nat(const Nat& n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back(Term{Ordinal(), n});
  return o;
}

Ordinal Ordinal::omega() { return omega_pow(nat(1)); }

Ordinal Ordinal::omega_pow(const Ordinal& e, const Nat& c) {
  Ordinal o;
  if (c > 0) o.terms_.push_back(Term{e, c});
  return o;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  Ordinal o;
  o.terms_ = std::move(terms);
  if (!o.valid_cnf()) throw Error(ErrorKind::Parse, "term list is not in Cantor normal form");
  return o;
}

bool Ordinal::is_nat() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

Nat Ordinal::nat_value() const {
  if (terms_.empty()) return 0;
  if (!is_nat()) throw Error(ErrorKind::PreconditionFailed, "ordinal " + str() + " is not below w");
  return terms_[0].coefficient;
}

Ordinal::Kind Ordinal::kind() const {
  if (terms_.empty()) return Kind::Zero;
  return terms_.back().exponent.is_zero() ? Kind::Successor : Kind::Limit;
}

Ordinal Ordinal::predecessor() const {
  if (kind() != Kind::Successor)
    throw Error(ErrorKind::PreconditionFailed, "predecessor of non-successor " + str());
  Ordinal o = *this;
  Term& last = o.terms_.back();
  last.coefficient -= 1;
  if (last.coefficient == 0) o.terms_.pop_back();
  return o;
}

std::pair<Ordinal, Ordinal> Ordinal::split_last() const {
  if (terms_.empty()) throw Error(ErrorKind::PreconditionFailed, "split_last of 0");
  Ordinal gamma = *this;
  Term& last = gamma.terms_.back();
  Ordinal delta = last.exponent;
  last.coefficient -= 1;
  if (last.coefficient == 0) gamma.terms_.pop_back();
  return {gamma, delta};
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& rhs) const {
  const auto n = std::min(terms_.size(), rhs.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = terms_[i].exponent <=> rhs.terms_[i].exponent;
    if (c != std::strong_ordering::equal) return c;
    int cc = ::cmp(terms_[i].coefficient, rhs.terms_[i].coefficient);
    if (cc != 0) return cc < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return terms_.size() <=> rhs.terms_.size();
}

bool Ordinal::operator==(const Ordinal& rhs) const {
  return (*this <=> rhs) == std::strong_ordering::equal;
}

Ordinal Ordinal::operator+(const Ordinal& rhs) const {
  if (rhs.is_zero()) return *this;
  Ordinal out;
  const Ordinal& lead = rhs.terms_[0].exponent;
  std::size_t i = 0;
  while (i < terms_.size() && terms_[i].exponent > lead) {
    out.terms_.push_back(terms_[i]);
    ++i;
  }
  std::size_t start = 0;
  if (i < terms_.size() && terms_[i].exponent == lead) {
    Term merged = rhs.terms_[0];
    merged.coefficient += terms_[i].coefficient;
    out.terms_.push_back(merged);
    start = 1;
  }
  for (std::size_t j = start; j < rhs.terms_.size(); ++j) out.terms_.push_back(rhs.terms_[j]);
  return out;
}

bool Ordinal::valid_cnf() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coefficient < 1) return false;
    if (!terms_[i].exponent.valid_cnf()) return false;
    if (i + 1 < terms_.size() && !(terms_[i].exponent > terms_[i + 1].exponent)) return false;
  }
  return true;
}

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += "+";
    const Term& t = terms_[i];
    if (t.exponent.is_zero()) {
      out += t.coefficient.get_str();
      continue;
    }
    out += "w";
    if (!(t.exponent == nat(1))) {
      out += "^(" + t.exponent.str() + ")";
    }
    if (t.coefficient != 1) out += "*" + t.coefficient.get_str();
  }
  return out;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  bool eat(char c) {
    if (!eof() && peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::optional<Nat> parse_nat() {
    std::size_t start = pos;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    if (pos == start) return std::nullopt;
    return Nat(std::string(text.substr(start, pos - start)), 10);
  }

  std::optional<Ordinal> parse_ord() {
    if (!eof() && peek() == '0') {
      ++pos;
      return Ordinal();
    }
    std::vector<Ordinal::Term> terms;
    do {
      auto t = parse_term();
      if (!t) return std::nullopt;
      terms.push_back(Ordinal::Term{t->second, t->first});
    } while (eat('+'));
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
      if (!(terms[i].exponent > terms[i + 1].exponent)) return std::nullopt;
    return Ordinal::from_terms(std::move(terms));
  }

  // (coefficient >= 1, exponent)
  std::optional<std::pair<Nat, Ordinal>> parse_term() {
    if (eat('w')) {
      Ordinal expo = Ordinal::nat(1);
      if (eat('^')) {
        if (!eat('(')) return std::nullopt;
        auto e = parse_ord();
        if (!e || !eat(')')) return std::nullopt;
        expo = *e;
      }
      Nat coeff = 1;
      if (eat('*')) {
        auto c = parse_nat();
        if (!c || *c < 1) return std::nullopt;
        coeff = *c;
      }
      return std::make_pair(coeff, expo);
    }
    auto n = parse_nat();
    if (!n || *n < 1) return std::nullopt;
    return std::make_pair(*n, Ordinal());
  }
};

}  // namespace

std::optional<Ordinal> Ordinal::parse(std::string_view text) {
  Parser p{text};
  auto o = p.parse_ord();
  if (!o || !p.eof()) return std::nullopt;
  return o;
}

Cmp cmp(const Ordinal& a, const Ordinal& b) {
  auto c = a <=> b;
  if (c == std::strong_ordering::less) return Cmp::LT;
  if (c == std::strong_ordering::greater) return Cmp::GT;
  return Cmp::EQ;
}

Ordinal add(const Ordinal& a, const Ordinal& b) { return a + b; }

namespace {

void enumerate_rec(const std::vector<Ordinal>& exponents, std::size_t next_exp,
                   std::size_t terms_left, std::uint64_t max_coeff, const Ordinal& prefix,
                   const Ordinal& limit, std::size_t cap, std::vector<Ordinal>& out) {
  if (out.size() > cap)
    throw Error(ErrorKind::Overflow, "enumeration exceeds cap of " + std::to_string(cap));
  if (prefix < limit) out.push_back(prefix);
  if (terms_left == 0) return;
  // exponents sorted descending from index next_exp; appending keeps CNF
  for (std::size_t i = next_exp; i < exponents.size(); ++i) {
    for (std::uint64_t c = 1; c <= max_coeff; ++c) {
      Ordinal extended =
          prefix + Ordinal::omega_pow(exponents[i], Nat(static_cast<unsigned long>(c)));
      if (!(extended < limit)) break;  // larger coefficients only grow
      enumerate_rec(exponents, i + 1, terms_left - 1, max_coeff, extended, limit, cap, out);
    }
  }
}

}  // namespace

std::vector<Ordinal> enumerate_bounded(const Ordinal& limit, std::size_t max_term_count,
                                       std::uint64_t max_coeff, std::size_t cap) {
  std::vector<Ordinal> out;
  if (limit.is_zero() || max_coeff == 0 || max_term_count == 0 || limit == Ordinal::nat(1)) {
    if (Ordinal() < limit) out.push_back(Ordinal());
    return out;
  }
  // Any ordinal below limit has leading exponent at most limit's.
  const Ordinal& top_exp = limit.terms()[0].exponent;
  std::vector<Ordinal> exponents =
      enumerate_bounded(top_exp + Ordinal::nat(1), max_term_count, max_coeff, cap);
  std::sort(exponents.begin(), exponents.end(),
            [](const Ordinal& a, const Ordinal& b) { return b < a; });
  enumerate_rec(exponents, 0, max_term_count, max_coeff, Ordinal(), limit, cap, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SeqCode encode_seq(const std::vector<Nat>& s) {
  if (s.empty()) return 0;
  Nat v = 1;
  bool first = true;
  for (const Nat& x : s) {
    if (!first) {
      v <<= 1;
      v |= 1;
    }
    first = false;
    if (x > 0) {
      if (!x.fits_ulong_p())
        throw Error(ErrorKind::Overflow, "sequence entry too large to encode");
      v <<= x.get_ui();
    }
  }
  return v;
}

SeqCode encode_seq_u64(const std::vector<std::uint64_t>& s) {
  std::vector<Nat> nats;
  nats.reserve(s.size());
  for (auto x : s) nats.push_back(Nat(static_cast<unsigned long>(x)));
  return encode_seq(nats);
}

std::vector<Nat> decode_seq(const SeqCode& code) {
  if (code < 0) throw Error(ErrorKind::PreconditionFailed, "negative sequence code");
  std::vector<Nat> out;
  if (code == 0) return out;
  const std::size_t bits = mpz_sizeinbase(code.get_mpz_t(), 2);
  Nat run = 0;
  for (std::size_t i = bits - 1; i-- > 0;) {
    if (mpz_tstbit(code.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      out.push_back(run);
      run = 0;
    } else {
      run += 1;
    }
  }
  out.push_back(run);
  return out;
}

}  // namespace ordlab
