#include "ftnorm/cli.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftnorm/descint.hpp"
#include "ftnorm/errors.hpp"
#include "ftnorm/lyap.hpp"
#include "ftnorm/oracle.hpp"
#include "ftnorm/pencil.hpp"
#include "ftnorm/system_io.hpp"
#include "ftnorm/sysnorm.hpp"

namespace ftn {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;

struct CommandOptions {
  std::string system_path;
  std::vector<double> band;
  std::string method = "auto";
  std::string output = "text";
  bool degrees = false;
  bool continuous = false;
  int decimation = 0;
  double oracle_tol = -1.0;  // negative = no cross-check
};

double to_radians(double value, bool degrees) {
  return degrees ? value * M_PI / 180.0 : value;
}

Band make_band(const CommandOptions& opts) {
  if (opts.band.size() != 2) {
    throw InvalidInputError("a --band <theta1> <theta2> pair is required");
  }
  return Band(to_radians(opts.band[0], opts.degrees), to_radians(opts.band[1], opts.degrees));
}

MethodChoice parse_method(const std::string& method) {
  if (method == "auto") return MethodChoice::kAuto;
  if (method == "stable") return MethodChoice::kStable;
  if (method == "general") return MethodChoice::kGeneral;
  throw InvalidInputError("--method must be auto, stable or general");
}

json matrix_to_json(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index jcol = 0; jcol < m.cols(); ++jcol) {
      row.push_back(m(i, jcol));
    }
    rows.push_back(row);
  }
  return rows;
}

void emit(const json& doc, const CommandOptions& opts, std::ostream& out) {
  if (opts.output == "json") {
    out << doc.dump(2) << "\n";
    return;
  }
  // Text rendering: one "key: value" line per field, matrices row by row.
  out << std::setprecision(17);
  for (const auto& item : doc.items()) {
    if (item.value().is_array() && !item.value().empty() && item.value()[0].is_array()) {
      out << item.key() << ":\n";
      for (const auto& row : item.value()) {
        out << "  ";
        for (const auto& entry : row) {
          out << entry.get<double>() << " ";
        }
        out << "\n";
      }
    } else if (item.value().is_number_float()) {
      out << item.key() << ": " << item.value().get<double>() << "\n";
    } else {
      out << item.key() << ": " << item.value().dump() << "\n";
    }
  }
}

StateSpace state_space_from(const SystemFile& file) {
  if (file.kind != SystemKind::kStateSpace) {
    throw InvalidInputError("this command needs a state_space system file");
  }
  if (file.time_domain != TimeDomain::kDiscrete) {
    throw InvalidInputError("norms are defined for discrete-time systems only");
  }
  return StateSpace(file.a, file.b, file.c, file.d);
}

int cmd_norm(const CommandOptions& opts, std::ostream& out) {
  const SystemFile file = parse_system_file(opts.system_path);
  const StateSpace sys = state_space_from(file);
  const MethodChoice choice = parse_method(opts.method);

  if (opts.decimation > 0) {
    if (!opts.band.empty()) {
      throw InvalidInputError("--decimation derives its own band; do not pass --band");
    }
    const double j_value = multirate_error(sys, opts.decimation);
    if (opts.oracle_tol >= 0.0) {
      const double oracle_full = oracle_truncated_norm(sys, Band(-M_PI, M_PI));
      const double oracle_band =
          oracle_truncated_norm(sys, Band(-M_PI / opts.decimation, M_PI / opts.decimation));
      const double oracle_j = oracle_full - oracle_band;
      if (std::abs(j_value - oracle_j) > opts.oracle_tol * std::max(1.0, std::abs(oracle_j))) {
        std::ostringstream os;
        os << "oracle cross-check failed: closed form " << j_value << " vs quadrature "
           << oracle_j;
        throw NumericalError(os.str());
      }
    }
    json doc;
    doc["command"] = "norm";
    doc["value"] = j_value;
    doc["method"] = "multirate";
    doc["decimation"] = opts.decimation;
    doc["band"] = {-M_PI / opts.decimation, M_PI / opts.decimation};
    doc["warnings"] = json::array();
    emit(doc, opts, out);
    return kExitOk;
  }

  const Band band = make_band(opts);
  const NormResult result = truncated_norm_with_feedthrough(sys, band, choice);
  if (opts.oracle_tol >= 0.0) {
    const double oracle = oracle_truncated_norm(sys, band);
    if (std::abs(result.value - oracle) > opts.oracle_tol * std::max(1.0, std::abs(oracle))) {
      std::ostringstream os;
      os << "oracle cross-check failed: closed form " << result.value << " vs quadrature "
         << oracle;
      throw NumericalError(os.str());
    }
  }
  json doc;
  doc["command"] = "norm";
  doc["value"] = result.value;
  doc["method"] = to_string(result.method);
  doc["band"] = {band.theta1, band.theta2};
  doc["arc_clearance"] = std::min(result.arc_clearance, kClearanceUnbounded);
  doc["warnings"] = result.diagnostics;
  emit(doc, opts, out);
  return kExitOk;
}

int cmd_integral(const CommandOptions& opts, std::ostream& out) {
  const SystemFile file = parse_system_file(opts.system_path);
  if (file.kind == SystemKind::kStateSpace && !file.d.isZero(0.0)) {
    throw InvalidInputError("integral expects a strictly proper system (D = 0)");
  }
  const DescriptorPair pencil(file.e, file.a);

  const bool file_continuous =
      file.time_domain_specified && file.time_domain == TimeDomain::kContinuous;
  if (opts.continuous && file.time_domain_specified &&
      file.time_domain == TimeDomain::kDiscrete) {
    throw InvalidInputError("--continuous conflicts with a discrete-time system file");
  }
  const bool continuous = opts.continuous || file_continuous;

  if (opts.band.size() != 2) {
    throw InvalidInputError("a --band pair is required");
  }

  ComplexMatrix value;
  double clearance = kClearanceUnbounded;
  if (continuous) {
    if (opts.degrees) {
      throw InvalidInputError("--degrees applies to discrete angular bands only");
    }
    const ContinuousBand band(opts.band[0], opts.band[1]);
    clearance = imaginary_segment_clearance(pencil, band);
    value = integrate_resolvent_continuous(pencil, band);
    if (file.has_transfer_wrappers) {
      value = (to_complex(file.c) * value * to_complex(file.b)).eval();
    }
    if (opts.oracle_tol >= 0.0) {
      const auto integrand = [&](double omega) {
        ComplexMatrix r = descriptor_resolvent(pencil, kImag * omega);
        if (file.has_transfer_wrappers) {
          r = (to_complex(file.c) * r * to_complex(file.b)).eval();
        }
        return r;
      };
      const QuadratureResult quad = quad_matrix(integrand, band.omega1, band.omega2);
      if (!quad.converged) {
        throw NumericalError("oracle cross-check quadrature did not converge");
      }
      const double err = (value - quad.value).cwiseAbs().maxCoeff();
      const double scale = std::max(1.0, quad.value.cwiseAbs().maxCoeff());
      if (err > opts.oracle_tol * scale) {
        std::ostringstream os;
        os << "oracle cross-check failed: max deviation " << err;
        throw NumericalError(os.str());
      }
    }
  } else {
    const Band band = make_band(opts);
    clearance = arc_clearance(pencil, band);
    if (file.has_transfer_wrappers) {
      value = integrate_transfer_discrete(file.c, pencil, file.b, band);
    } else {
      value = integrate_resolvent_discrete_any(pencil, band);
    }
    if (opts.oracle_tol >= 0.0) {
      const auto integrand = [&](double theta) {
        ComplexMatrix r = descriptor_resolvent(pencil, std::polar(1.0, theta));
        if (file.has_transfer_wrappers) {
          r = (to_complex(file.c) * r * to_complex(file.b)).eval();
        }
        return r;
      };
      const QuadratureResult quad = quad_matrix(integrand, band.theta1, band.theta2);
      if (!quad.converged) {
        throw NumericalError("oracle cross-check quadrature did not converge");
      }
      const double err = (value - quad.value).cwiseAbs().maxCoeff();
      const double scale = std::max(1.0, quad.value.cwiseAbs().maxCoeff());
      if (err > opts.oracle_tol * scale) {
        std::ostringstream os;
        os << "oracle cross-check failed: max deviation " << err;
        throw NumericalError(os.str());
      }
    }
  }

  json doc;
  doc["command"] = "integral";
  doc["real"] = matrix_to_json(value.real());
  doc["imag"] = matrix_to_json(value.imag());
  doc["band"] = {continuous ? opts.band[0] : to_radians(opts.band[0], opts.degrees),
                 continuous ? opts.band[1] : to_radians(opts.band[1], opts.degrees)};
  doc["time_domain"] = continuous ? "continuous" : "discrete";
  doc["arc_clearance"] = std::min(clearance, kClearanceUnbounded);
  doc["warnings"] = json::array();
  emit(doc, opts, out);
  return kExitOk;
}

int cmd_info(const CommandOptions& opts, std::ostream& out) {
  const SystemFile file = parse_system_file(opts.system_path);
  json doc;
  doc["command"] = "info";
  doc["kind"] = file.kind == SystemKind::kStateSpace ? "state_space" : "descriptor";
  doc["time_domain"] = file.time_domain == TimeDomain::kContinuous ? "continuous" : "discrete";
  doc["states"] = file.a.rows();

  const DescriptorPair pencil(file.e, file.a);
  json eigs = json::array();
  for (const auto& eig : generalized_eigenvalues(pencil)) {
    json entry;
    entry["infinite"] = eig.is_infinite;
    if (!eig.is_infinite) {
      entry["re"] = eig.value.real();
      entry["im"] = eig.value.imag();
      entry["modulus"] = std::abs(eig.value);
    }
    eigs.push_back(entry);
  }
  doc["eigenvalues"] = eigs;
  if (file.kind == SystemKind::kStateSpace) {
    doc["spectral_radius"] = spectral_radius(file.a);
    doc["schur_stable"] = spectral_radius(file.a) < 1.0 - kSchurMargin;
  }
  if (opts.band.size() == 2) {
    if (file.time_domain == TimeDomain::kContinuous) {
      doc["arc_clearance"] = std::min(
          imaginary_segment_clearance(pencil, ContinuousBand(opts.band[0], opts.band[1])),
          kClearanceUnbounded);
    } else {
      const Band band = make_band(opts);
      doc["band"] = {band.theta1, band.theta2};
      doc["arc_clearance"] = std::min(arc_clearance(pencil, band), kClearanceUnbounded);
    }
  }
  emit(doc, opts, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency-truncated system norms and descriptor resolvent band integrals"};
  app.require_subcommand(1);

  CommandOptions opts;
  const auto add_common = [&opts](CLI::App* cmd, bool with_band) {
    cmd->add_option("--system", opts.system_path, "path to a system JSON file")->required();
    if (with_band) {
      cmd->add_option("--band", opts.band, "band endpoints (radians unless --degrees)")
          ->expected(2);
      cmd->add_flag("--degrees", opts.degrees, "interpret the band in degrees");
    }
    cmd->add_option("--output", opts.output, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--check-oracle", opts.oracle_tol,
                    "re-verify against adaptive quadrature at this tolerance");
  };

  CLI::App* norm = app.add_subcommand("norm", "frequency-truncated squared L2 norm");
  add_common(norm, true);
  norm->add_option("--method", opts.method, "norm evaluation path")
      ->check(CLI::IsMember({"auto", "stable", "general"}));
  norm->add_option("--decimation", opts.decimation,
                   "emit the M-fold decimation reconstruction error J");

  CLI::App* integral = app.add_subcommand("integral", "band integral of the resolvent");
  add_common(integral, true);
  integral->add_flag("--continuous", opts.continuous,
                     "treat the band as a real frequency interval in rad/s");

  CLI::App* info = app.add_subcommand("info", "eigenvalues, stability and clearance report");
  add_common(info, true);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ftnorm");
  for (const auto& arg : args) {
    argv.push_back(arg.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (norm->parsed()) {
      return cmd_norm(opts, out);
    }
    if (integral->parsed()) {
      return cmd_integral(opts, out);
    }
    return cmd_info(opts, out);
  } catch (const InvalidInputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace ftn
