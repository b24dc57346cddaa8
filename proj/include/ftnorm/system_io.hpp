#pragma once

#include <string>

#include "ftnorm/types.hpp"

// System file ingestion for the CLI: a flat JSON document with "kind",
// "time_domain" and row-major nested numeric arrays for the matrices.

namespace ftn {

enum class SystemKind { kStateSpace, kDescriptor };
enum class TimeDomain { kDiscrete, kContinuous };

struct SystemFile {
  SystemKind kind;
  TimeDomain time_domain;
  bool time_domain_specified;  // false when the file omitted the field
  RealMatrix a;
  RealMatrix b;  // 0x0 when absent (descriptor without wrappers)
  RealMatrix c;
  RealMatrix d;  // state_space only; zeros when omitted
  RealMatrix e;  // descriptor only; identity when omitted
  bool has_transfer_wrappers;  // descriptor carries B and C
};

// Parse and validate a system document. Throws InvalidInputError with the
// offending field named for schema, dimension, and finiteness violations.
SystemFile parse_system(const std::string& text);

// Convenience wrapper reading the file at `path`.
SystemFile parse_system_file(const std::string& path);

}  // namespace ftn
