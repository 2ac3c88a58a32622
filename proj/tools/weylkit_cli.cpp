// weylkit: command-line front end for the Weyl-algebra idealizer toolkit.
//
// Exit status: 0 success, 1 property violation, 2 malformed input.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "weylkit/weylkit.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace weylkit;

enum class Format { Json, Csv, Text };

struct Output {
  Format format = Format::Text;
  std::string path;
};

/// One command's rendered result, independent of output format.
struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::array();
  json violations = json::array();
  /// Plain-text rendering; falls back to an aligned table when empty.
  std::vector<std::string> text;
  /// Explicit CSV columns (result keys); defaults to every scalar key.
  std::vector<std::pair<std::string, std::string>> csv_columns;

  void violation(const Violation &v) {
    violations.push_back({{"kind", std::string(to_string(v.kind))}, {"message", v.message}});
  }
};

int level_cap() {
  if (const char *env = std::getenv("WEYLKIT_MAX_LEVEL")) {
    try {
      return std::stoi(env);
    } catch (const std::exception &) {
      throw Error(ErrorKind::InputError, "WEYLKIT_MAX_LEVEL must be an integer");
    }
  }
  return 16;
}

void check_level(const std::string &name, int value) {
  if (value < 0)
    throw Error(ErrorKind::InputError, name + " must be >= 0");
  if (value > level_cap())
    throw Error(ErrorKind::InputError, name + " = " + std::to_string(value) +
                                           " exceeds WEYLKIT_MAX_LEVEL = " +
                                           std::to_string(level_cap()));
}

std::pair<Rational, Rational> parse_point(const std::string &text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw Error(ErrorKind::InputError, "point must be written as a,b");
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

std::pair<long, long> parse_pair(const std::string &text, const std::string &what) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw Error(ErrorKind::InputError, what + " must be written as a,b");
  try {
    std::size_t used1 = 0, used2 = 0;
    std::string lhs = text.substr(0, comma), rhs = text.substr(comma + 1);
    long a = std::stol(lhs, &used1), b = std::stol(rhs, &used2);
    if (used1 != lhs.size() || used2 != rhs.size())
      throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error &) {
    throw Error(ErrorKind::InputError, "malformed " + what + " '" + text + "'");
  }
}

/// Exactly one of --f and --curve.
struct CurveArgs {
  std::string poly;
  std::string pair;

  void add_to(CLI::App *cmd) {
    cmd->add_option("--f", poly, "curve polynomial, e.g. \"y^2 - x^3\"");
    cmd->add_option("--curve", pair, "monomial curve y^a = x^b as a,b");
  }

  CurvePoly resolve(json &inputs) const {
    if (poly.empty() == pair.empty())
      throw Error(ErrorKind::InputError, "give exactly one of --f and --curve");
    if (!pair.empty()) {
      auto [a, b] = parse_pair(pair, "--curve");
      MonomialCurve c(static_cast<int>(a), static_cast<int>(b));
      inputs["curve"] = {a, b};
      inputs["f"] = to_string(c.poly());
      return c.curve();
    }
    CurvePoly f(parse_bipoly(poly));
    inputs["f"] = to_string(f.poly());
    return f;
  }

  MonomialCurve monomial(json &inputs) const {
    if (pair.empty() || !poly.empty())
      throw Error(ErrorKind::InputError, "this command needs --curve a,b");
    auto [a, b] = parse_pair(pair, "--curve");
    MonomialCurve c(static_cast<int>(a), static_cast<int>(b));
    inputs["curve"] = {a, b};
    inputs["f"] = to_string(c.poly());
    return c;
  }
};

json growth_json(const GrowthTable &table) {
  json out = json::array();
  for (const auto &r : table.records)
    out.push_back({{"n", r.n},
                   {"dim", r.dim},
                   {"bound_cardinality", r.bound_cardinality},
                   {"bound_paper_expr", r.bound_printed}});
  return out;
}

TorsionOptions fault_options(bool inject) {
  TorsionOptions opts;
  if (inject)
    opts.row_hook = [](Exponent2 ij, SparseRow &row) {
      if (ij == Exponent2{0, 0})
        row.clear();
    };
  return opts;
}

std::string scalar_text(const json &v) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto &e : v) {
      if (!s.empty())
        s += ";";
      s += scalar_text(e);
    }
    return s;
  }
  if (v.is_null())
    return "";
  return v.dump();
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render(const Report &r, Format format) {
  std::ostringstream os;
  switch (format) {
  case Format::Json: {
    json doc = {{"command", r.command},
                {"inputs", r.inputs},
                {"results", r.results},
                {"violations", r.violations}};
    os << doc.dump(2) << "\n";
    break;
  }
  case Format::Csv: {
    auto cols = r.csv_columns;
    if (cols.empty() && !r.results.empty())
      for (const auto &[k, v] : r.results.front().items())
        cols.emplace_back(k, k);
    for (std::size_t c = 0; c < cols.size(); ++c)
      os << (c ? "," : "") << csv_field(cols[c].second);
    os << "\n";
    for (const auto &row : r.results) {
      for (std::size_t c = 0; c < cols.size(); ++c)
        os << (c ? "," : "")
           << csv_field(row.contains(cols[c].first) ? scalar_text(row[cols[c].first]) : "");
      os << "\n";
    }
    break;
  }
  case Format::Text: {
    if (!r.text.empty()) {
      for (const auto &line : r.text)
        os << line << "\n";
    } else if (!r.results.empty()) {
      std::vector<std::string> keys;
      for (const auto &[k, v] : r.results.front().items())
        keys.push_back(k);
      std::vector<std::size_t> width(keys.size());
      for (std::size_t c = 0; c < keys.size(); ++c) {
        width[c] = keys[c].size();
        for (const auto &row : r.results)
          width[c] = std::max(width[c], scalar_text(row[keys[c]]).size());
      }
      for (std::size_t c = 0; c < keys.size(); ++c)
        os << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << keys[c];
      os << "\n";
      for (const auto &row : r.results) {
        for (std::size_t c = 0; c < keys.size(); ++c)
          os << (c ? "  " : "") << std::setw(static_cast<int>(width[c]))
             << scalar_text(row[keys[c]]);
        os << "\n";
      }
    }
    for (const auto &v : r.violations)
      os << "VIOLATION " << v["kind"].get<std::string>() << ": "
         << v["message"].get<std::string>() << "\n";
    break;
  }
  }
  return os.str();
}

void emit(const Report &r, const Output &out) {
  const std::string text = render(r, out.format);
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out.path, std::ios::binary);
  if (!file)
    throw Error(ErrorKind::InputError, "cannot open '" + out.path + "' for writing");
  file << text;
}

std::vector<std::string> op_strings(const std::vector<WeylOp> &ops) {
  std::vector<std::string> out;
  for (const auto &op : ops)
    out.push_back(to_string(op));
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact computations for idealizers of plane curves in the second Weyl algebra"};
  app.require_subcommand(1);

  Output out;
  std::string format = "text";
  auto add_output = [&](CLI::App *cmd) {
    cmd->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", out.path, "write output to FILE instead of stdout");
  };

  Report report;
  std::function<void()> action;

  // weyl
  auto *weyl = app.add_subcommand("weyl", "Weyl algebra arithmetic")->require_subcommand(1);
  std::string op_text, poly_text, lhs_text, rhs_text;
  auto *weyl_eval = weyl->add_subcommand("eval", "apply an operator to a polynomial");
  weyl_eval->add_option("--op", op_text, "operator, e.g. \"2*x*dx + 3*y*dy\"")->required();
  weyl_eval->add_option("--poly", poly_text, "polynomial in x, y")->required();
  add_output(weyl_eval);
  weyl_eval->callback([&] {
    action = [&] {
      report.command = "weyl eval";
      const WeylOp op = parse_weyl(op_text);
      const BiPoly p = parse_bipoly(poly_text);
      report.inputs = {{"op", to_string(op)}, {"poly", to_string(p)}};
      const std::string result = to_string(act(op, p));
      report.results.push_back({{"result", result}});
      report.text = {result};
    };
  });

  auto *weyl_mul_cmd = weyl->add_subcommand("mul", "normal-form product lhs * rhs");
  weyl_mul_cmd->add_option("--lhs", lhs_text)->required();
  weyl_mul_cmd->add_option("--rhs", rhs_text)->required();
  add_output(weyl_mul_cmd);
  weyl_mul_cmd->callback([&] {
    action = [&] {
      report.command = "weyl mul";
      const WeylOp a = parse_weyl(lhs_text), b = parse_weyl(rhs_text);
      report.inputs = {{"lhs", to_string(a)}, {"rhs", to_string(b)}};
      const WeylOp product = weyl_mul(a, b);
      const std::string result = to_string(product);
      report.results.push_back(
          {{"product", result},
           {"bernstein_degree", product.is_zero() ? -1 : product.bernstein_degree()}});
      report.text = {result};
    };
  });

  // idealizer
  auto *ideal = app.add_subcommand("idealizer", "idealizer and colon ideals of fA_2")
                    ->require_subcommand(1);
  CurveArgs curve_args;
  std::string g_text, point_text;
  int level = 0;

  auto *member = ideal->add_subcommand("member", "membership of an operator");
  curve_args.add_to(member);
  member->add_option("--op", op_text)->required();
  member->add_option("--g", g_text, "test the colon ideal (gA_2 : fA_2) instead");
  add_output(member);
  member->callback([&] {
    action = [&] {
      report.command = "idealizer member";
      const CurvePoly f = curve_args.resolve(report.inputs);
      const WeylOp op = parse_weyl(op_text);
      report.inputs["op"] = to_string(op);
      bool in;
      if (g_text.empty()) {
        in = idealizer_member(op, f);
      } else {
        const BiPoly g = parse_bipoly(g_text);
        report.inputs["g"] = to_string(g);
        in = colon_member(op, f, g);
      }
      report.results.push_back({{"member", in}});
      report.text = {in ? "true" : "false"};
    };
  });

  auto *basis = ideal->add_subcommand("basis", "basis of G_n, or of the point colon ideal");
  curve_args.add_to(basis);
  basis->add_option("--n", level)->required();
  basis->add_option("--point", point_text, "basis of ((x-a,y-b)A_2 : fA_2) meet B_n");
  add_output(basis);
  basis->callback([&] {
    action = [&] {
      report.command = "idealizer basis";
      const CurvePoly f = curve_args.resolve(report.inputs);
      check_level("--n", level);
      report.inputs["n"] = level;
      FilteredBasis b;
      if (point_text.empty()) {
        b = idealizer_filtered_basis(f, level);
      } else {
        auto [px, py] = parse_point(point_text);
        report.inputs["point"] = {to_string(px), to_string(py)};
        b = point_colon_basis(f, px, py, level);
      }
      const auto elements = op_strings(b.elements);
      report.results.push_back({{"n", level}, {"dim", b.dim()}, {"elements", elements}});
      report.text.push_back("dim " + std::to_string(b.dim()));
      for (const auto &e : elements)
        report.text.push_back(e);
    };
  });

  int max_deg = 0;
  auto *dims = ideal->add_subcommand("dims", "dim G_n for n = 0..max-deg");
  curve_args.add_to(dims);
  dims->add_option("--max-deg", max_deg)->required();
  add_output(dims);
  dims->callback([&] {
    action = [&] {
      report.command = "idealizer dims";
      const CurvePoly f = curve_args.resolve(report.inputs);
      check_level("--max-deg", max_deg);
      report.inputs["max_deg"] = max_deg;
      for (int n = 0; n <= max_deg; ++n)
        report.results.push_back({{"n", n}, {"dim", idealizer_filtered_basis(f, n).dim()}});
    };
  });

  // torsion
  auto *torsion = app.add_subcommand("torsion", "the point module M(n)")->require_subcommand(1);
  int max_n = 0, max_m = 0, n0_cap = 0;
  bool inject_fault = false;
  auto add_fault_hook = [&](CLI::App *cmd) {
    cmd->add_flag("--inject-row-fault", inject_fault,
                  "test hook: zero the constraint row (0,0)")
        ->group("");
  };

  auto *tdims = torsion->add_subcommand("dims", "growth table of dim M(n)");
  curve_args.add_to(tdims);
  tdims->add_option("--max-n", max_n)->required();
  tdims->add_option("--point", point_text, "module at the point a,b instead of the origin");
  add_fault_hook(tdims);
  add_output(tdims);
  tdims->callback([&] {
    action = [&] {
      report.command = "torsion dims";
      const CurvePoly f = curve_args.resolve(report.inputs);
      check_level("--max-n", max_n);
      report.inputs["max_n"] = max_n;
      GrowthTable table;
      if (point_text.empty()) {
        table = growth_table(f, max_n, fault_options(inject_fault));
      } else {
        auto [px, py] = parse_point(point_text);
        report.inputs["point"] = {to_string(px), to_string(py)};
        table = point_module_dims(f, px, py, max_n, fault_options(inject_fault));
      }
      report.results = growth_json(table);
      report.csv_columns = {{"n", "n"}, {"dim", "dim"}, {"bound_cardinality", "bound"}};
    };
  });

  auto *tcheck = torsion->add_subcommand("check", "bound, independence, leading-term checks");
  curve_args.add_to(tcheck);
  tcheck->add_option("--max-n", max_n)->required();
  tcheck->add_option("--max-m", max_m, "also check M(n) F_m in M(n+m) for n, m <= max-m");
  add_fault_hook(tcheck);
  add_output(tcheck);
  tcheck->callback([&] {
    action = [&] {
      report.command = "torsion check";
      const CurvePoly f = curve_args.resolve(report.inputs);
      check_level("--max-n", max_n);
      check_level("--max-m", max_m);
      report.inputs["max_n"] = max_n;
      report.inputs["max_m"] = max_m;
      const auto opts = fault_options(inject_fault);
      auto record = [&](const std::string &check, int n, std::optional<int> m,
                        const std::optional<Violation> &v, json detail) {
        json row = {{"check", check}, {"n", n}, {"m", m ? json(*m) : json()},
                    {"passed", !v.has_value()}};
        row["detail"] = std::move(detail);
        report.results.push_back(std::move(row));
        if (v)
          report.violation(*v);
      };
      for (int n = 0; n <= max_n; ++n) {
        auto b = bound_check(f, n, opts);
        record("bound", n, std::nullopt, b.violation,
               std::to_string(b.dim) + " <= " + std::to_string(b.bound_cardinality));
        if (n < f.degree())
          continue;
        auto ind = independence_check(f, n, opts);
        record("independence", n, std::nullopt, ind.violation,
               "rank " + std::to_string(ind.rank) + " of " + std::to_string(ind.expected));
        auto lead = leading_term_check(f, n, opts);
        record("leading_term", n, std::nullopt, lead.violation,
               "lead00 " + to_string(lead.lead00));
      }
      for (int n = 0; n <= max_m; ++n)
        for (int m = 0; m <= max_m; ++m) {
          auto fr = filtration_action_check(f, n, m, opts);
          record("filtration", n, m, fr.violation,
                 std::to_string(fr.products_checked) + " products");
        }
    };
  });

  auto *probe = torsion->add_subcommand("probe", "empirical finite-generation probe");
  curve_args.add_to(probe);
  probe->add_option("--n0-cap", n0_cap)->required();
  probe->add_option("--max-m", max_m)->required();
  add_fault_hook(probe);
  add_output(probe);
  probe->callback([&] {
    action = [&] {
      report.command = "torsion probe";
      const CurvePoly f = curve_args.resolve(report.inputs);
      check_level("--n0-cap", n0_cap);
      check_level("--max-m", max_m);
      check_level("--n0-cap + --max-m", n0_cap + max_m);
      report.inputs["n0_cap"] = n0_cap;
      report.inputs["max_m"] = max_m;
      auto pr = generation_probe(f, n0_cap, max_m, fault_options(inject_fault));
      for (const auto &a : pr.attempts)
        report.results.push_back({{"n0", a.n0},
                                  {"generated", a.generated},
                                  {"passed", a.passed()}});
      report.inputs["witness"] = pr.witness ? json(*pr.witness) : json();
    };
  });

  // curve
  auto *curve = app.add_subcommand("curve", "normalization side for y^a = x^b")
                    ->require_subcommand(1);
  int order = 0;
  std::string window_text = "0,0";
  auto *box = curve->add_subcommand("dmod-basis", "operators on k[t] preserving k[t^a,t^b]");
  curve_args.add_to(box);
  box->add_option("--order", order)->required();
  box->add_option("--window", window_text, "coefficient exponent window K,L meaning [-K, L]");
  add_output(box);
  box->callback([&] {
    action = [&] {
      report.command = "curve dmod-basis";
      const MonomialCurve c = curve_args.monomial(report.inputs);
      check_level("--order", order);
      auto [K, L] = parse_pair(window_text, "--window");
      check_level("--window K", static_cast<int>(K));
      if (L < 0 || L > 4 * level_cap())
        throw Error(ErrorKind::InputError, "--window L out of range");
      report.inputs["order"] = order;
      report.inputs["window"] = {-K, L};
      for (const auto &D : dmod_box_basis(c.semigroup(), order, K, L)) {
        report.results.push_back({{"operator", to_string(D)}, {"order", D.order()}});
        report.text.push_back(to_string(D));
      }
      report.text.insert(report.text.begin(),
                         "dim " + std::to_string(report.results.size()));
    };
  });

  auto *corr = curve->add_subcommand("correspond", "project G_n to operators on k[t]");
  curve_args.add_to(corr);
  corr->add_option("--n", level)->required();
  add_output(corr);
  corr->callback([&] {
    action = [&] {
      report.command = "curve correspond";
      const MonomialCurve c = curve_args.monomial(report.inputs);
      check_level("--n", level);
      report.inputs["n"] = level;
      auto cr = correspondence_check(c, level);
      std::vector<std::string> images;
      for (const auto &D : cr.images)
        images.push_back(to_string(D));
      report.results.push_back({{"n", level},
                                {"basis_dim", cr.basis_dim},
                                {"image_dim", cr.image_dim},
                                {"quotient_dim", cr.quotient_dim},
                                {"passed", cr.passed()},
                                {"images", images}});
      if (cr.violation)
        report.violation(*cr.violation);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  out.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;
  try {
    action();
    emit(report, out);
    return report.violations.empty() ? 0 : 1;
  } catch (const Error &e) {
    switch (e.kind()) {
    case ErrorKind::InputError:
    case ErrorKind::ZeroDivisor:
    case ErrorKind::ZeroOperator:
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    default:
      report.violation({e.kind(), e.what()});
      try {
        emit(report, out);
      } catch (const Error &) {
      }
      return 1;
    }
  }
}
