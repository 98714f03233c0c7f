#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "report.hpp"
#include "solvlie/errors.hpp"
#include "solvlie/io.hpp"

using namespace solvlie;
using report::json;

namespace {

enum Exit { kOk = 0, kInput = 1, kField = 2, kInternal = 3 };

int exit_code_for(ErrorKind k) {
  if (is_field_error(k)) return kField;
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::JacobiViolation:
    case ErrorKind::DuplicateBracket:
    case ErrorKind::UnknownLabel:
    case ErrorKind::InvalidArgument:
    case ErrorKind::NotSolvable:
    case ErrorKind::AmbientMismatch:
      return kInput;
    default:
      return kInternal;
  }
}

// A path, or the name of a bundled corpus algebra.
LieAlgebra load(const std::string& file) {
  namespace fs = std::filesystem;
  if (fs::exists(file)) return parse_algebra_file(file);
  fs::path bundled = fs::path(SOLVLIE_CORPUS_DIR) / (file + ".alg");
  if (fs::exists(bundled)) return parse_algebra_file(bundled.string());
  throw Error(ErrorKind::InvalidArgument, "no such file or corpus algebra: " + file);
}

void emit(const std::string& format, const std::string& command, const LieAlgebra& g, const json& data,
          const std::string& text, const std::string& dot) {
  if (format == "data") std::cout << report::envelope(command, g, data).dump(2) << "\n";
  else if (format == "dot") std::cout << dot;
  else std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact subalgebra and ideal classification for solvable Lie algebras"};
  app.require_subcommand(1);

  std::string file, format = "text", element;
  std::size_t max_dim = 0, dim = 0;
  long prime = 101;
  bool real = false, traces = false;
  auto formats = CLI::IsMember({"text", "data", "dot"});

  auto* check = app.add_subcommand("check", "Jacobi, solvability and series summary");
  check->add_option("file", file, "algebra file or corpus name")->required();
  check->add_option("--format", format)->check(CLI::IsMember({"text", "data"}));

  auto* ideals = app.add_subcommand("ideals", "Enumerate the ideal lattice");
  ideals->add_option("file", file, "algebra file or corpus name")->required();
  ideals->add_flag("--real", real, "real ideals of a real algebra");
  ideals->add_option("--max-dim", max_dim);
  ideals->add_option("--format", format)->check(formats);

  auto* shape = app.add_subcommand("shape", "Smallest lattice ideal containing an element");
  shape->add_option("file", file, "algebra file or corpus name")->required();
  shape->add_option("--element", element, "element expression, e.g. \"X + 2*Y\"")->required();
  shape->add_option("--format", format)->check(CLI::IsMember({"text", "data"}));

  auto* classify = app.add_subcommand("classify", "Subalgebras up to conjugacy");
  classify->add_option("file", file, "algebra file or corpus name")->required();
  classify->add_option("--dim", dim, "only this dimension");
  classify->add_option("--format", format)->check(formats);
  classify->add_flag("--traces", traces, "include reduction traces");

  auto* oracle = app.add_subcommand("oracle", "Count ideals over F_p and compare with the strata");
  oracle->add_option("file", file, "algebra file or corpus name")->required();
  oracle->add_option("--prime", prime)->required();
  oracle->add_option("--format", format)->check(CLI::IsMember({"text", "data"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << report::error_object("usage", e.what(), kInput).dump() << "\n";
    return kInput;
  }

  try {
    LieAlgebra g = load(file);
    if (*check) {
      emit(format, "check", g, report::check_to_json(g), report::check_to_text(g), "");
    } else if (*ideals) {
      require_solvable(g);
      std::optional<std::size_t> md;
      if (max_dim > 0) md = max_dim;
      if (real && g.is_complex()) throw Error(ErrorKind::InvalidArgument, "--real needs a real algebra");
      IdealLattice lat = real ? enumerate_ideals_real(g, md) : enumerate_ideals(g, md);
      emit(format, "ideals", g, report::lattice_to_json(g, lat, real), report::lattice_to_text(g, lat, real),
           report::lattice_to_dot(g, lat));
    } else if (*shape) {
      Element x = parse_element_expr(g, element);
      IdealLattice lat = lattice_for(g);
      Subspace s = shape_of(g, x, lat);
      json data = {{"element", g.element_to_string(x)}, {"shape", report::subspace_to_json(g, s)}};
      emit(format, "shape", g, data,
           "shape of " + g.element_to_string(x) + ": " + subspace_to_string(g, s) + "\n", "");
    } else if (*classify) {
      std::optional<std::size_t> md;
      if (dim > 0) md = dim;
      Classification c = classify_all(g, md);
      if (dim > 0) {
        for (std::size_t d = 0; d < c.by_dim.size(); ++d)
          if (d != dim) c.by_dim[d].clear();
        std::erase_if(c.certificates, [&](const PairCertificate& p) { return p.dim != dim; });
      }
      emit(format, "classify", g, report::classification_to_json(g, c, traces),
           report::classification_to_text(g, c, traces), report::classification_to_dot(g, c));
    } else if (*oracle) {
      if (prime < 2) throw Error(ErrorKind::InvalidArgument, "--prime must be a prime");
      OracleReport r = finite_field_oracle(g, enumerate_ideals(g), prime);
      emit(format, "oracle", g, report::oracle_to_json(g, r), report::oracle_to_text(g, r), "");
      if (!r.skipped && !r.agrees()) return kInternal;
    }
  } catch (const Error& e) {
    int code = exit_code_for(e.kind());
    std::cerr << report::error_object(error_kind_name(e.kind()), e.what(), code).dump() << "\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << report::error_object("Internal", e.what(), kInternal).dump() << "\n";
    return kInternal;
  }
  return kOk;
}
