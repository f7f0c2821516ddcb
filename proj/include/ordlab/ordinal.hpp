#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ordlab {

using Nat = mpz_class;

/// Ordinals below epsilon_0 in Cantor normal form:
/// w^e1*c1 + ... + w^ek*ck with e1 > e2 > ... > ek and all ci >= 1.
/// The empty term list is 0.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;

  static Ordinal nat(const Nat& n);
  static Ordinal nat(std::uint64_t n) { return nat(Nat(static_cast<unsigned long>(n))); }
  static Ordinal omega();
  /// w^e * c (zero when c = 0).
  static Ordinal omega_pow(const Ordinal& e, const Nat& c = 1);
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True iff the value is below omega.
  bool is_nat() const;
  /// The natural-number value; requires is_nat().
  Nat nat_value() const;

  enum class Kind { Zero, Successor, Limit };
  Kind kind() const;
  /// Requires kind() == Successor.
  Ordinal predecessor() const;

  /// Splits a nonzero ordinal as gamma + w^delta where w^delta is one copy
  /// of the last CNF term: returns (gamma, delta).  Drives fundamental
  /// sequences.
  std::pair<Ordinal, Ordinal> split_last() const;

  Ordinal operator+(const Ordinal& rhs) const;

  std::strong_ordering operator<=>(const Ordinal& rhs) const;
  bool operator==(const Ordinal& rhs) const;

  /// Checks the CNF invariants hold structurally (used by tests on
  /// arbitrary term lists; from_terms-built values always pass).
  bool valid_cnf() const;

  /// Grammar: ord := "0" | term ("+" term)*
  ///          term := "w" ("^" "(" ord ")")? ("*" nat)? | nat
  /// str() emits the canonical spelling; parse accepts it back.
  std::string str() const;
  static std::optional<Ordinal> parse(std::string_view text);

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  Nat coefficient;

  bool operator==(const Term& rhs) const {
    return exponent == rhs.exponent && coefficient == rhs.coefficient;
  }
};

enum class Cmp { LT, EQ, GT };

Cmp cmp(const Ordinal& a, const Ordinal& b);
Ordinal add(const Ordinal& a, const Ordinal& b);

/// All CNF ordinals < limit with at most max_term_count terms and every
/// coefficient <= max_coeff (the same bounds apply to exponents,
/// recursively).  Sorted ascending.  Throws OVERFLOW past cap.
std::vector<Ordinal> enumerate_bounded(const Ordinal& limit, std::size_t max_term_count,
                                       std::uint64_t max_coeff, std::size_t cap = 200000);

/// Bijective coding of finite natural sequences: code 0 is the empty
/// sequence; a nonempty sequence <x1,...,xk> is read off the binary
/// expansion "1 0^x1 1 0^x2 ... 1 0^xk".
using SeqCode = Nat;

SeqCode encode_seq(const std::vector<Nat>& s);
std::vector<Nat> decode_seq(const SeqCode& code);

SeqCode encode_seq_u64(const std::vector<std::uint64_t>& s);

}  // namespace ordlab
