#include "covals/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "covals/boundary.hpp"
#include "covals/builtins.hpp"
#include "covals/dsl.hpp"
#include "covals/error.hpp"
#include "covals/greedy.hpp"
#include "covals/io.hpp"
#include "covals/spectrum.hpp"
#include "covals/verify.hpp"

namespace covals::cli {

namespace {

using io::json;

struct Config {
  std::string matrix;
  std::string expr;
  std::string expr_file;
  double tol = 1e-8;
  int theta_samples = 720;
  double theta = 0.0;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string output;
  std::string branch = "all";
};

CMatrix load(const Config& c) {
  if (c.matrix.empty()) throw Error(ErrorCode::InputError, "--matrix is required");
  if (c.matrix.rfind("builtin:", 0) == 0) {
    const std::string name = c.matrix.substr(8);
    if (const NamedMatrix* m = find_builtin(name)) return m->matrix;
    throw Error(ErrorCode::InputError, "unknown built-in matrix '" + name + "'");
  }
  return io::load_matrix(c.matrix);
}

std::string expression_text(const Config& c) {
  if (!c.expr.empty() && !c.expr_file.empty()) throw Error(ErrorCode::InputError, "use either --expr or --expr-file");
  if (!c.expr.empty()) return c.expr;
  if (c.expr_file.empty()) throw Error(ErrorCode::InputError, "--expr or --expr-file is required");
  std::ifstream in(c.expr_file);
  if (!in) throw Error(ErrorCode::InputError, c.expr_file + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

bool csv(const Config& c) { return c.format == "csv"; }

std::string complex_rows(const CVector& values) {
  std::string s = "re,im\n";
  for (const auto& z : values) s += io::format_double(z.real()) + "," + io::format_double(z.imag()) + "\n";
  return s;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Result {
  std::string text;
  int code = kExitOk;
};

Result cmd_eig(const Config& c) {
  const CVector eigs = eigenvalues(load(c));
  if (csv(c)) return {complex_rows(eigs)};
  json values = json::array();
  for (const auto& z : eigs) values.push_back(io::complex_to_json(z));
  return {dump({{"eigenvalues", values}})};
}

Result cmd_secondary(const Config& c) {
  const SecondarySpectrum s = secondary_values(load(c));
  if (csv(c)) return {complex_rows(s.values)};
  return {dump(io::to_json(s))};
}

Result cmd_expand(const Config& c) {
  const CovalExpansion e = greedy_expand(load(c), {c.tol});
  if (csv(c)) {
    std::string s = "order,gamma,kind,re,im\n";
    for (const auto& l : e.levels)
      for (const auto& p : l.poles) {
        s += std::to_string(l.order) + "," + io::format_double(l.gamma) + "," + (p.is_finite() ? "finite" : "infinite") +
             "," + io::format_double(p.value.real()) + "," + io::format_double(p.value.imag()) + "\n";
      }
    return {s};
  }
  return {dump(io::to_json(e))};
}

Result cmd_boundary(const Config& c) {
  const BoundaryTrace t = trace_boundary(load(c), c.theta_samples, c.matrix);
  return {csv(c) ? io::boundary_csv(t) : dump(io::to_json(t))};
}

Result cmd_envelope(const Config& c, std::ostream& err) {
  const dsl::Expr e = dsl::parse(expression_text(c));
  const dsl::Envelope env = dsl::envelope(e, c.theta_samples, dsl::parse_branch(c.branch));
  if (!env.degenerate_thetas.empty()) {
    err << "warning: DegenerateInP: expression does not depend on p at " << env.degenerate_thetas.size()
        << " angle(s); those samples were dropped\n";
  }
  return {csv(c) ? io::envelope_csv(env) : dump(io::to_json(env))};
}

Result cmd_realroot(const Config& c) {
  const RemainderRoots r = remainder_real_rooted(load(c), c.theta);
  if (csv(c)) {
    std::string s = "re,im,real\n";
    const double sigma = std::max(1.0, load(c).frobenius_norm());
    for (const auto& z : r.roots) {
      s += io::format_double(z.real()) + "," + io::format_double(z.imag()) + "," +
           (std::abs(z.imag()) <= 1e-7 * sigma ? "1" : "0") + "\n";
    }
    return {s};
  }
  return {dump(io::to_json(r))};
}

Result cmd_verify(const Config& c) {
  VerifyOptions opt;
  opt.tol = c.tol;
  opt.theta_samples = c.theta_samples;
  opt.seed = c.seed;
  const std::vector<CheckResult> checks = verify_matrix(load(c), opt);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.passed; });
  if (csv(c)) {
    std::string s = "check,status,detail\n";
    for (const auto& r : checks)
      s += "\"" + r.name + "\"," + (r.skipped ? "skip" : r.passed ? "pass" : "fail") + ",\"" + r.detail + "\"\n";
    return {s, ok ? kExitOk : kExitFailure};
  }
  json arr = json::array();
  for (const auto& r : checks)
    arr.push_back({{"check", r.name}, {"status", r.skipped ? "skip" : r.passed ? "pass" : "fail"}, {"detail", r.detail}});
  return {dump({{"passed", ok}, {"checks", arr}}), ok ? kExitOk : kExitFailure};
}

Result cmd_gallery(const Config& c) {
  if (csv(c)) {
    std::string s = "name,theta,p,x,y\n";
    for (const auto& m : builtin_matrices()) {
      const BoundaryTrace t = trace_boundary(m.matrix, c.theta_samples, m.name);
      for (const auto& p : t.samples) {
        s += m.name + "," + io::format_double(p.theta) + "," + io::format_double(p.p) + "," +
             io::format_double(p.point.real()) + "," + io::format_double(p.point.imag()) + "\n";
      }
    }
    return {s};
  }
  json doc = json::object();
  for (const auto& m : builtin_matrices()) {
    json entry = io::to_json(trace_boundary(m.matrix, c.theta_samples, m.name));
    entry["description"] = m.description;
    entry["matrix"] = io::matrix_to_json(m.matrix);
    doc[m.name] = entry;
  }
  return {dump(doc)};
}

// Writes to a sibling temporary file, then renames over the target.
void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::InputError, path + ": cannot write output");
    f << text;
    if (!f) throw Error(ErrorCode::InputError, path + ": write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::InputError, path + ": " + ec.message());
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InputError:
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::InvalidArgument:
    case ErrorCode::PointDomainAtomInLineContext:
    case ErrorCode::NotTriangular:
    case ErrorCode::NotEigenvalue: return true;
    default: return false;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coval descriptions of numerical-range boundaries", "covals"};
  app.require_subcommand(1);
  Config c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--matrix", c.matrix, "matrix JSON file, or builtin:NAME");
    sub->add_option("--tol", c.tol, "cleanup/verification tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--theta-samples", c.theta_samples, "number of theta samples")->check(CLI::Range(16, 1 << 24));
    sub->add_option("--seed", c.seed, "seed for randomized checks");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", c.output, "output file (default stdout)");
  };

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"eig", "eigenvalues"},
      {"secondary", "secondary values and their centroid"},
      {"expand", "greedy coval expansion of det p(A)"},
      {"boundary", "boundary polyline of W(A)"},
      {"envelope", "envelope of a coval expression"},
      {"verify", "invariant suite for a matrix"},
      {"realroot", "roots in p of det p(A) - prod p(lambda_j) at --theta"},
      {"gallery", "boundary polylines of the built-in matrices"},
  };
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_common(sub);
    if (std::string_view(cmd.name) == "envelope") {
      sub->add_option("--expr", c.expr, "expression text");
      sub->add_option("--expr-file", c.expr_file, "file holding one expression");
      sub->add_option("--branch", c.branch, "all, max or min")->check(CLI::IsMember({"all", "max", "min"}));
    }
    if (std::string_view(cmd.name) == "realroot") sub->add_option("--theta", c.theta, "tangential angle")->required();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Result r;
    if (name == "eig") r = cmd_eig(c);
    else if (name == "secondary") r = cmd_secondary(c);
    else if (name == "expand") r = cmd_expand(c);
    else if (name == "boundary") r = cmd_boundary(c);
    else if (name == "envelope") r = cmd_envelope(c, err);
    else if (name == "verify") r = cmd_verify(c);
    else if (name == "realroot") r = cmd_realroot(c);
    else r = cmd_gallery(c);

    if (c.output.empty()) out << r.text;
    else write_atomically(c.output, r.text);
    return r.code;
  } catch (const SyntaxError& e) {
    err << "error: " << e.name() << " at position " << e.position() << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInput : kExitFailure;
  }
}

}  // namespace covals::cli
