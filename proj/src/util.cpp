#include "spillresp/util.hpp"

#include <cmath>
#include <cstring>

namespace spillresp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::ProbabilityMass: return "ProbabilityMassError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeParameter: return "NegativeParameter";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NonPositiveVolume: return "NonPositiveVolume";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::CrossRefError: return "CrossRefError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IntegralityError: return "IntegralityError";
    case ErrorCode::ObjectiveMismatch: return "ObjectiveMismatch";
    case ErrorCode::OrderingViolation: return "OrderingViolation";
    case ErrorCode::AllRunsFailed: return "AllRunsFailed";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "InternalError";
  }
  return "UnknownError";
}

std::string fmt_double(double v) {
  if (v == 0.0) return "0";  // normalize -0
  char buf[40];
  // Shortest representation that parses back exactly: try increasing precision.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace spillresp
