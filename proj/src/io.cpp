#include "covals/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "covals/error.hpp"

namespace covals::io {

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

Complex parse_complex(std::string_view text) {
  // Reuse the expression grammar: a literal is the argument of p(...).
  const std::string wrapped = "p(" + std::string(text) + ")";
  dsl::Expr e;
  try {
    e = dsl::parse(wrapped);
  } catch (const SyntaxError& err) {
    throw Error(ErrorCode::InputError, "malformed complex literal '" + std::string(text) + "'");
  }
  if (e.root().kind != dsl::Node::Kind::Pedal) {
    throw Error(ErrorCode::InputError, "malformed complex literal '" + std::string(text) + "'");
  }
  return e.root().value;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  if (z.real() == 0.0) return format_double(z.imag()) + "i";
  return format_double(z.real()) + (z.imag() < 0.0 ? "-" : "+") + format_double(std::abs(z.imag())) + "i";
}

CMatrix matrix_from_json(const json& doc, std::string_view source) {
  const std::string where(source);
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array()) {
    throw Error(ErrorCode::InputError, where + ": expected an object with a \"rows\" array");
  }
  const json& rows = doc["rows"];
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw Error(ErrorCode::InputError, where + ": matrix has no rows");
  CMatrix a(n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::InputError, where + ": row " + std::to_string(i) + " must have " + std::to_string(n) +
                                             " entries (matrix must be square)");
    }
    for (int j = 0; j < n; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      const std::string at = where + ": entry (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      if (v.is_number()) {
        a(i, j) = v.get<double>();
      } else if (v.is_string()) {
        try {
          a(i, j) = parse_complex(v.get<std::string>());
        } catch (const Error& err) {
          throw Error(ErrorCode::InputError, at + ": " + err.what());
        }
      } else {
        throw Error(ErrorCode::InputError, at + ": expected a complex literal string or a number");
      }
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        throw Error(ErrorCode::InputError, at + ": entry is not finite");
      }
    }
  }
  return a;
}

CMatrix parse_matrix(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw Error(ErrorCode::InputError, std::string(source) + ": " + err.what());
  }
  return matrix_from_json(doc, source);
}

CMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InputError, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str(), path);
}

json matrix_to_json(const CMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.size(); ++j) row.push_back(format_complex(a(i, j)));
    rows.push_back(row);
  }
  return {{"rows", rows}};
}

json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

json to_json(const CovalExpansion& e) {
  json levels = json::array();
  for (const auto& level : e.levels) {
    json poles = json::array();
    for (const auto& p : level.poles) {
      poles.push_back({{"kind", p.is_finite() ? "finite" : "infinite"}, {"re", p.value.real()}, {"im", p.value.imag()}});
    }
    levels.push_back({{"order", level.order}, {"gamma", level.gamma}, {"poles", poles}});
  }
  return {
      {"n", e.n},
      {"scale", e.scale},
      {"levels", levels},
      {"tolerances",
       {{"cleanup", e.tolerances.cleanup},
        {"cascade", e.tolerances.cascade},
        {"reconstruction", e.tolerances.reconstruction}}},
      {"residual", e.residual},
      {"infinite_poles", e.has_infinite_poles},
      {"vanished_orders", e.vanished_orders},
  };
}

CovalExpansion expansion_from_json(const json& j) {
  try {
    CovalExpansion e;
    e.n = j.at("n").get<int>();
    e.scale = j.at("scale").get<double>();
    for (const auto& l : j.at("levels")) {
      ExpansionLevel level;
      level.order = l.at("order").get<int>();
      level.gamma = l.at("gamma").get<double>();
      for (const auto& p : l.at("poles")) {
        const Complex z{p.at("re").get<double>(), p.at("im").get<double>()};
        const std::string kind = p.at("kind").get<std::string>();
        if (kind != "finite" && kind != "infinite") throw Error(ErrorCode::InputError, "unknown pole kind '" + kind + "'");
        level.poles.push_back(kind == "finite" ? Pole::finite(z) : Pole::infinite(z));
      }
      e.levels.push_back(std::move(level));
    }
    const json& t = j.at("tolerances");
    e.tolerances = {t.at("cleanup").get<double>(), t.at("cascade").get<double>(), t.at("reconstruction").get<double>()};
    e.residual = j.at("residual").get<double>();
    e.has_infinite_poles = j.value("infinite_poles", false);
    e.vanished_orders = j.value("vanished_orders", std::vector<int>{});
    return e;
  } catch (const json::exception& err) {
    throw Error(ErrorCode::InputError, std::string("expansion document: ") + err.what());
  }
}

json to_json(const SecondarySpectrum& s) {
  json values = json::array();
  for (const auto& v : s.values) values.push_back(complex_to_json(v));
  return {{"values", values}, {"centroid", complex_to_json(s.centroid)}, {"t1", s.t1}, {"normal", s.normal_flag}};
}

json to_json(const BoundaryTrace& t) {
  json samples = json::array();
  for (const auto& s : t.samples) {
    samples.push_back({{"theta", s.theta}, {"p", s.p}, {"x", s.point.real()}, {"y", s.point.imag()},
                       {"residual", s.residual}});
  }
  const char* shape = t.shape == RangeShape::Region ? "region" : t.shape == RangeShape::Segment ? "segment" : "point";
  return {{"matrix_id", t.matrix_id}, {"shape", shape}, {"samples", samples}};
}

json to_json(const dsl::Envelope& e) {
  json branches = json::array();
  for (const auto& b : e.branches) {
    json pts = json::array();
    for (const auto& p : b.points) {
      pts.push_back({{"theta", p.theta}, {"p", p.p}, {"x", p.point.real()}, {"y", p.point.imag()}});
    }
    branches.push_back({{"branch", b.id}, {"closed", b.closed}, {"points", pts}});
  }
  return {{"branches", branches}, {"degenerate_thetas", e.degenerate_thetas}, {"singular_thetas", e.singular_thetas}};
}

json to_json(const RemainderRoots& r) {
  json coeffs = json::array(), roots = json::array();
  for (const auto& c : r.coefficients) coeffs.push_back(c.real());
  for (const auto& z : r.roots) roots.push_back(complex_to_json(z));
  return {{"coefficients", coeffs}, {"roots", roots}, {"real_count", r.real_count}, {"all_real", r.all_real}};
}

std::string boundary_csv(const BoundaryTrace& t) {
  std::string out = "theta,p,x,y\n";
  for (const auto& s : t.samples) {
    out += format_double(s.theta) + "," + format_double(s.p) + "," + format_double(s.point.real()) + "," +
           format_double(s.point.imag()) + "\n";
  }
  return out;
}

std::string envelope_csv(const dsl::Envelope& e) {
  std::string out = "branch,theta,p,x,y\n";
  for (const auto& b : e.branches)
    for (const auto& p : b.points) {
      out += std::to_string(b.id) + "," + format_double(p.theta) + "," + format_double(p.p) + "," +
             format_double(p.point.real()) + "," + format_double(p.point.imag()) + "\n";
    }
  return out;
}

}  // namespace covals::io
