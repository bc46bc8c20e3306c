#include "glt/core.hpp"

#include <sstream>

namespace glt {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedConfiguration: return "UnsupportedConfiguration";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::OutsideValidityDomain: return "OutsideValidityDomain";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::IncidenceUnrealizable: return "IncidenceUnrealizable";
    case ErrorKind::PointAtSingularity: return "PointAtSingularity";
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::OutsideModel: return "OutsideModel";
    case ErrorKind::Uncertifiable: return "Uncertifiable";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::MalformedScript: return "MalformedScript";
    case ErrorKind::BoxTooLarge: return "BoxTooLarge";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::DegreeBoundTooSmall: return "DegreeBoundTooSmall";
    case ErrorKind::MissingData: return "MissingData";
    case ErrorKind::NoEquivariantStructure: return "NoEquivariantStructure";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotGStable: return "NotGStable";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& msg)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}

void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

std::string q_str(const Q& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

Q parse_q(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Q(Z(s));
    Z num(s.substr(0, slash));
    Z den(s.substr(slash + 1));
    if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    return Q(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail(ErrorKind::ParseError, "not a rational: '" + s + "'");
  }
}

QDivClass to_q(const DivClass& d) {
  QDivClass r;
  r.reserve(d.size());
  for (auto x : d) r.emplace_back(x);
  return r;
}

DivClass add(const DivClass& a, const DivClass& b) {
  DivClass r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

DivClass sub(const DivClass& a, const DivClass& b) {
  DivClass r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

DivClass scale(i64 k, const DivClass& a) {
  DivClass r(a);
  for (auto& x : r) x *= k;
  return r;
}

QDivClass qadd(const QDivClass& a, const QDivClass& b) {
  QDivClass r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

QDivClass qscale(const Q& k, const QDivClass& a) {
  QDivClass r(a);
  for (auto& x : r) x *= k;
  return r;
}

std::string vec_str(const DivClass& d) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ']';
  return os.str();
}

i64 binom(i64 n, i64 k) {
  if (k < 0 || n < 0 || k > n) return 0;
  i64 r = 1;
  for (i64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace glt
