#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace glt {

using Q = boost::multiprecision::mpq_rational;
using Z = boost::multiprecision::mpz_int;
using i64 = std::int64_t;

using DivClass = std::vector<i64>;
using QDivClass = std::vector<Q>;

enum class ErrorKind {
  UnsupportedConfiguration,
  OutOfRange,
  OutsideValidityDomain,
  NonTermination,
  IncidenceUnrealizable,
  PointAtSingularity,
  DuplicatePoint,
  OutsideModel,
  Uncertifiable,
  CapExceeded,
  Inconclusive,
  MalformedScript,
  BoxTooLarge,
  UnsupportedFamily,
  DegreeBoundTooSmall,
  MissingData,
  NoEquivariantStructure,
  NotInvariant,
  NotGStable,
  PreconditionViolated,
  ParseError,
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);
void require(bool cond, ErrorKind kind, const std::string& msg);

// "p/q" with q > 0; integers as "p/1".
std::string q_str(const Q& q);
// Accepts "p", "p/q", "-p/q".
Q parse_q(const std::string& s);

QDivClass to_q(const DivClass& d);
DivClass add(const DivClass& a, const DivClass& b);
DivClass sub(const DivClass& a, const DivClass& b);
DivClass scale(i64 k, const DivClass& a);
QDivClass qadd(const QDivClass& a, const QDivClass& b);
QDivClass qscale(const Q& k, const QDivClass& a);

std::string vec_str(const DivClass& d);

i64 binom(i64 n, i64 k);

}  // namespace glt
