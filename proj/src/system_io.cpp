#include "ftnorm/system_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ftnorm/errors.hpp"

namespace ftn {

namespace {

using nlohmann::json;

RealMatrix parse_matrix(const json& node, const std::string& field) {
  if (!node.is_array() || node.empty()) {
    throw InvalidInputError("system file: field \"" + field +
                            "\" must be a non-empty array of rows");
  }
  const size_t rows = node.size();
  size_t cols = 0;
  RealMatrix m;
  for (size_t i = 0; i < rows; ++i) {
    const json& row = node[i];
    if (!row.is_array() || row.empty()) {
      throw InvalidInputError("system file: field \"" + field + "\" row " + std::to_string(i) +
                              " must be a non-empty array of numbers");
    }
    if (i == 0) {
      cols = row.size();
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      throw InvalidInputError("system file: field \"" + field + "\" row " + std::to_string(i) +
                              " has " + std::to_string(row.size()) + " entries, expected " +
                              std::to_string(cols));
    }
    for (size_t jcol = 0; jcol < cols; ++jcol) {
      if (!row[jcol].is_number()) {
        throw InvalidInputError("system file: field \"" + field + "\" entry (" +
                                std::to_string(i) + "," + std::to_string(jcol) +
                                ") is not a number");
      }
      const double value = row[jcol].get<double>();
      if (!std::isfinite(value)) {
        throw InvalidInputError("system file: field \"" + field + "\" entry (" +
                                std::to_string(i) + "," + std::to_string(jcol) +
                                ") is not finite");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jcol)) = value;
    }
  }
  return m;
}

const json& require_field(const json& doc, const std::string& field) {
  if (!doc.contains(field)) {
    throw InvalidInputError("system file: required field \"" + field + "\" is missing");
  }
  return doc.at(field);
}

}  // namespace

SystemFile parse_system(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("system file: ") + e.what());
  }
  if (!doc.is_object()) {
    throw InvalidInputError("system file: top level must be an object");
  }

  static const std::set<std::string> known = {"kind", "time_domain", "A", "B", "C", "D", "E"};
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) {
      throw InvalidInputError("system file: unknown field \"" + item.key() + "\"");
    }
  }

  SystemFile sys;
  const json& kind_node = require_field(doc, "kind");
  const std::string kind = kind_node.is_string() ? kind_node.get<std::string>() : "";
  if (kind == "state_space") {
    sys.kind = SystemKind::kStateSpace;
  } else if (kind == "descriptor") {
    sys.kind = SystemKind::kDescriptor;
  } else {
    throw InvalidInputError(
        "system file: field \"kind\" must be \"state_space\" or \"descriptor\"");
  }

  sys.time_domain = TimeDomain::kDiscrete;
  sys.time_domain_specified = doc.contains("time_domain");
  if (doc.contains("time_domain")) {
    const json& td = doc.at("time_domain");
    const std::string domain = td.is_string() ? td.get<std::string>() : "";
    if (domain == "discrete") {
      sys.time_domain = TimeDomain::kDiscrete;
    } else if (domain == "continuous") {
      sys.time_domain = TimeDomain::kContinuous;
    } else {
      throw InvalidInputError(
          "system file: field \"time_domain\" must be \"discrete\" or \"continuous\"");
    }
  }

  sys.a = parse_matrix(require_field(doc, "A"), "A");
  if (sys.a.rows() != sys.a.cols()) {
    throw InvalidInputError("system file: field \"A\" must be square");
  }
  const Eigen::Index n = sys.a.rows();

  if (sys.kind == SystemKind::kStateSpace) {
    if (doc.contains("E")) {
      throw InvalidInputError("system file: field \"E\" is only valid for kind \"descriptor\"");
    }
    sys.b = parse_matrix(require_field(doc, "B"), "B");
    sys.c = parse_matrix(require_field(doc, "C"), "C");
    if (sys.b.rows() != n) {
      throw InvalidInputError("system file: field \"B\" must have as many rows as A");
    }
    if (sys.c.cols() != n) {
      throw InvalidInputError("system file: field \"C\" must have as many columns as A");
    }
    if (doc.contains("D")) {
      sys.d = parse_matrix(doc.at("D"), "D");
      if (sys.d.rows() != sys.c.rows() || sys.d.cols() != sys.b.cols()) {
        throw InvalidInputError("system file: field \"D\" must be (outputs x inputs)");
      }
    } else {
      sys.d = RealMatrix::Zero(sys.c.rows(), sys.b.cols());
    }
    sys.e = RealMatrix::Identity(n, n);
    sys.has_transfer_wrappers = true;
    return sys;
  }

  // Descriptor: E defaults to the identity; B and C come as a pair.
  if (doc.contains("D")) {
    throw InvalidInputError("system file: field \"D\" is only valid for kind \"state_space\"");
  }
  if (doc.contains("E")) {
    sys.e = parse_matrix(doc.at("E"), "E");
    if (sys.e.rows() != n || sys.e.cols() != n) {
      throw InvalidInputError("system file: field \"E\" must match the dimension of A");
    }
  } else {
    sys.e = RealMatrix::Identity(n, n);
  }
  const bool has_b = doc.contains("B");
  const bool has_c = doc.contains("C");
  if (has_b != has_c) {
    throw InvalidInputError("system file: descriptor needs both \"B\" and \"C\" or neither");
  }
  sys.has_transfer_wrappers = has_b;
  if (has_b) {
    sys.b = parse_matrix(doc.at("B"), "B");
    sys.c = parse_matrix(doc.at("C"), "C");
    if (sys.b.rows() != n) {
      throw InvalidInputError("system file: field \"B\" must have as many rows as A");
    }
    if (sys.c.cols() != n) {
      throw InvalidInputError("system file: field \"C\" must have as many columns as A");
    }
  }
  return sys;
}

SystemFile parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInputError("system file: cannot open \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_system(buffer.str());
}

}  // namespace ftn
