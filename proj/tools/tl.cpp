// tl: command line front end for the loop model library.

#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tl/fpl.hpp"
#include "tl/formulas.hpp"
#include "tl/generators.hpp"
#include "tl/stationary.hpp"
#include "tl/suite.hpp"
#include "tl/verify.hpp"

using namespace tl;
using json = nlohmann::ordered_json;

namespace {

enum class Format { Text, Json, Csv };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Format format_from(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw Usage("--format must be text, json or csv");
}

int status_code(Status s) { return s == Status::Fail ? 1 : 0; }

void print_report(const VerificationReport& r, Format f) {
  switch (f) {
    case Format::Text: std::cout << report_to_text(r); break;
    case Format::Json: std::cout << report_to_json(r) << "\n"; break;
    case Format::Csv:
      std::cout << "subject,parameters,expected,computed,status\n";
      for (const auto& c : r.cases) {
        std::cout << '"' << r.subject << "\",\"" << c.parameters << "\"," << c.expected << "," << c.computed << ","
                  << to_string(c.status) << "\n";
      }
      break;
  }
}

void print_pairs(const std::vector<std::pair<std::string, std::string>>& rows, const std::string& k,
                 const std::string& v, Format f, const json& extra = json::object()) {
  switch (f) {
    case Format::Text:
      for (const auto& [a, b] : rows) std::cout << a << "  " << b << "\n";
      break;
    case Format::Csv:
      std::cout << k << "," << v << "\n";
      for (const auto& [a, b] : rows) std::cout << '"' << a << "\"," << b << "\n";
      break;
    case Format::Json: {
      json j = extra;
      auto& arr = j["rows"] = json::array();
      for (const auto& [a, b] : rows) arr.push_back({{k, a}, {v, b}});
      std::cout << j.dump(2) << "\n";
      break;
    }
  }
}

KernelMethod method_from(const std::string& s) {
  if (s == "auto") return KernelMethod::Auto;
  if (s == "bareiss") return KernelMethod::Bareiss;
  if (s == "modular") return KernelMethod::Modular;
  throw Usage("--method must be auto, bareiss or modular");
}

int run_formula(const std::string& name, const std::vector<std::string>& args, const std::string& family, int n_max,
                Format f) {
  auto arg = [&](std::size_t i) {
    if (i >= args.size()) throw Usage("formula " + name + " needs more --args");
    return std::stoi(args[i]);
  };
  auto rational = [&](std::size_t i) {
    if (i >= args.size()) throw Usage("formula " + name + " needs more --args");
    mpq_class q(args[i]);
    q.canonicalize();
    return q;
  };
  std::vector<std::pair<std::string, std::string>> rows;
  if (name == "asm") rows.push_back({"A_" + args.at(0), asm_count(arg(0)).get_str()});
  else if (name == "vsasm") rows.push_back({"A^V_" + std::to_string(2 * arg(0) + 1), vsasm_count(arg(0)).get_str()});
  else if (name == "htasm") rows.push_back({"A^HT_" + std::to_string(2 * arg(0)), htasm_count(arg(0)).get_str()});
  else if (name == "avg-ht") rows.push_back({"<k>", avg_nests_ht(arg(0)).get_str()});
  else if (name == "avg-v") rows.push_back({"<k>", avg_nests_v(arg(0)).get_str()});
  else if (name == "nest-v" || name == "nest-ht") {
    const auto d = name == "nest-v" ? nest_distribution_v(arg(0)) : nest_distribution_ht(arg(0));
    for (const auto& [k, v] : d.values) rows.push_back({"P(" + std::to_string(k) + ")", v.get_str()});
    rows.push_back({"total", d.total().get_str()});
    rows.push_back({"<k>", d.average().get_str()});
  } else if (name == "hex-product") rows.push_back({"a", hex_coeff_product(arg(0), arg(1), arg(2)).get_str()});
  else if (name == "hex-det") rows.push_back({"a", hex_coeff_determinant(arg(0), arg(1), arg(2)).get_str()});
  else if (name == "pattern") rows.push_back({"matching", pattern_stp(arg(0), arg(1), arg(2)).text()});
  else if (name == "strange") {
    const auto [lhs, rhs] = strange_5f4_sides(rational(0), rational(1), arg(2));
    rows.push_back({"lhs", lhs.get_str()});
    rows.push_back({"rhs", rhs.get_str()});
    rows.push_back({"equal", lhs == rhs ? "true" : "false"});
  } else if (name == "factor") {
    rows.push_back({args.at(0), factorization_string(mpz_class(args.at(0)))});
  } else if (name == "table") {
    const NestFamily fam = nest_family_from_string(family);
    std::vector<std::vector<std::string>> table;
    for (int n = 2; n <= n_max; ++n) {
      const mpq_class avg = fam == NestFamily::HT ? avg_nests_ht(n) : avg_nests_v(n);
      const double asym = fam == NestFamily::HT ? avg_nests_ht_asymptotic(n) : avg_nests_v_asymptotic(n);
      std::ostringstream ratio;
      ratio << avg.get_d() / asym;
      table.push_back({std::to_string(2 * n), avg.get_str(), factorization_string(avg.get_den()),
                       factorization_string(avg.get_num()), ratio.str()});
    }
    const std::vector<std::string> head = {"2n", "<k>", "den", "num", "ratio_to_asymptotic"};
    if (f == Format::Json) {
      json j = json::array();
      for (const auto& row : table) {
        json o;
        for (std::size_t i = 0; i < head.size(); ++i) o[head[i]] = row[i];
        j.push_back(o);
      }
      std::cout << j.dump(2) << "\n";
    } else {
      const char* sep = f == Format::Csv ? "," : "\t";
      for (std::size_t i = 0; i < head.size(); ++i) std::cout << (i ? sep : "") << head[i];
      std::cout << "\n";
      for (const auto& row : table) {
        for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? sep : "") << row[i];
        std::cout << "\n";
      }
    }
    return 0;
  } else {
    throw Usage("unknown formula '" + name + "'");
  }
  print_pairs(rows, "name", "value", f, json{{"formula", name}, {"args", args}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temperley-Lieb loop model, FPL censuses and enumeration formulas"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));

  std::string bc_name, cls_name, matching_text, grid_name, numbering = "ccw", method = "auto", family = "ht";
  std::string svg_dir, config_path, out_dir, formula_name;
  std::vector<std::string> gens, formula_args, verify_args;
  int n = 0, threads = 0, n_max = 7;
  bool no_cache = false, verify_cache = false;

  auto* apply = app.add_subcommand("apply", "apply generators to a matching, rightmost first");
  auto* apply_class = apply->add_option("--class", cls_name, "matching class");
  apply->add_option("--bc", bc_name, "boundary condition (instead of --class)")->excludes(apply_class);
  apply->add_option("--matching,--state", matching_text, "parenthesis text")->required();
  apply->add_option("--gen,generators", gens, "e1 .. en, f1, fn; applied right to left")->required();

  auto* basis = app.add_subcommand("basis", "list a basis in canonical order");
  basis->add_option("--bc", bc_name, "boundary condition");
  basis->add_option("--class", cls_name, "matching class (instead of --bc)");
  basis->add_option("--n", n, "system size")->required();

  auto* ham = app.add_subcommand("hamiltonian", "print the loop Hamiltonian");
  ham->add_option("--bc", bc_name)->required();
  ham->add_option("--n", n)->required();

  auto* steady = app.add_subcommand("steady", "exact stationary state");
  steady->add_option("--bc", bc_name)->required();
  steady->add_option("--n", n)->required();
  steady->add_option("--method", method, "auto, bareiss or modular");

  auto* fpl = app.add_subcommand("fpl-census", "count FPL diagrams by boundary matching");
  fpl->add_option("--grid", grid_name, "g, gv, gv-odd, gvh, ght, ght-odd (v, vh, ht)")->required();
  fpl->add_option("--n", n)->required();
  fpl->add_option("--numbering", numbering, "ccw or cw");
  fpl->add_option("--threads", threads);
  fpl->add_option("--emit-svg", svg_dir, "write one SVG per diagram");
  fpl->add_flag("--no-cache", no_cache);
  fpl->add_flag("--verify-cache", verify_cache, "recount and compare with the cache entry");

  auto* nests = app.add_subcommand("nests", "nest distribution: census against formula");
  nests->add_option("--family", family, "v or ht");
  nests->add_option("--n", n)->required();

  auto* formula = app.add_subcommand("formula", "evaluate a closed formula");
  formula->add_option("name", formula_name,
                      "asm vsasm htasm nest-v nest-ht avg-v avg-ht hex-product hex-det pattern strange factor table")
      ->required();
  formula->add_option("--args", formula_args);
  formula->add_option("--family", family, "table: v or ht");
  formula->add_option("--n-max", n_max, "table: largest n");

  auto* verify = app.add_subcommand("verify", "run one check, e.g. 'verify rs closed 6' or 'verify hex 2 2 2'");
  verify->add_option("subject", verify_args, "rs|nests|hex|identities|strange|table|steady and its values")
      ->required();

  auto* suite = app.add_subcommand("suite", "run a suite configuration");
  suite->add_option("config", config_path)->required();
  suite->add_option("--out", out_dir, "directory for suite.json and suite.txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Format f = format_from(format);
    if (apply->parsed()) {
      if (cls_name.empty() && bc_name.empty()) throw Usage("apply needs --class or --bc");
      const MatchingClass cls = cls_name.empty()
                                    ? basis_class(boundary_from_string(bc_name), static_cast<int>(matching_text.size()))
                                    : matching_class_from_string(cls_name);
      std::string result;
      std::string json_text;
      if (cls == MatchingClass::Directed) {
        DirectedMatching m = parse_directed(matching_text);
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
          const Generator g = parse_generator(*it, m.size());
          check_generator(g, cls, m.size());
          m = tl::apply(g, m);
        }
        result = m.text();
        json_text = to_json(m);
      } else {
        Matching m = parse_parentheses(matching_text, cls);
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
          const Generator g = parse_generator(*it, m.size());
          check_generator(g, cls, m.size());
          m = tl::apply(g, m, cls);
        }
        result = m.text();
        json_text = to_json(m);
      }
      if (f == Format::Json) std::cout << json_text << "\n";
      else std::cout << result << "\n";
      return 0;
    }
    if (basis->parsed()) {
      std::vector<std::string> texts;
      if (!bc_name.empty()) {
        texts = build_action_table(boundary_from_string(bc_name), n).basis;
      } else if (!cls_name.empty()) {
        const MatchingClass cls = matching_class_from_string(cls_name);
        if (cls == MatchingClass::Directed) {
          for (const auto& m : enumerate_directed_basis(n)) texts.push_back(m.text());
        } else {
          for (const auto& m : enumerate_basis(cls, n)) texts.push_back(m.text());
        }
      } else {
        throw Usage("basis needs --bc or --class");
      }
      std::vector<std::pair<std::string, std::string>> rows;
      for (std::size_t i = 0; i < texts.size(); ++i) rows.push_back({std::to_string(i), texts[i]});
      if (f == Format::Text) {
        for (const auto& t : texts) std::cout << t << "\n";
      } else {
        print_pairs(rows, "index", "matching", f, json{{"n", n}, {"size", texts.size()}});
      }
      return 0;
    }
    if (ham->parsed()) {
      const auto h = build_hamiltonian(boundary_from_string(bc_name), n);
      const auto d = h.dense();
      if (f == Format::Json) {
        json j;
        j["bc"] = to_string(h.bc());
        j["n"] = n;
        j["basis"] = h.basis();
        j["matrix"] = d;
        j["intensity_matrix"] = h.is_intensity_matrix();
        std::cout << j.dump(2) << "\n";
      } else {
        const char* sep = f == Format::Csv ? "," : " ";
        if (f == Format::Csv) {
          std::cout << "row";
          for (const auto& b : h.basis()) std::cout << ",\"" << b << '"';
          std::cout << "\n";
        } else {
          for (const auto& b : h.basis()) std::cout << "# " << b << "\n";
        }
        for (std::size_t i = 0; i < d.size(); ++i) {
          if (f == Format::Csv) std::cout << '"' << h.basis()[i] << "\"" << sep;
          for (std::size_t j = 0; j < d.size(); ++j) {
            if (f == Format::Text) std::cout << (j ? " " : "") << std::setw(3) << d[i][j];
            else std::cout << (j ? sep : "") << d[i][j];
          }
          std::cout << "\n";
        }
      }
      return 0;
    }
    if (steady->parsed()) {
      const auto st = stationary_state(build_hamiltonian(boundary_from_string(bc_name), n), method_from(method));
      const auto stats = state_statistics(st);
      if (f == Format::Json) {
        json j;
        j["bc"] = to_string(st.bc);
        j["n"] = n;
        j["basis"] = st.basis;
        auto& coeffs = j["coefficients"] = json::array();
        for (const auto& c : st.coefficients) coeffs.push_back(c.get_str());
        j["sum"] = stats.sum.get_str();
        j["max"] = stats.max.get_str();
        j["min"] = stats.min.get_str();
        std::cout << j.dump(2) << "\n";
        return 0;
      }
      std::vector<std::pair<std::string, std::string>> rows;
      for (std::size_t i = 0; i < st.basis.size(); ++i) rows.push_back({st.basis[i], st.coefficients[i].get_str()});
      print_pairs(rows, "matching", "coefficient", f);
      if (f == Format::Text) std::cout << "sum  " << stats.sum << "\n";
      return 0;
    }
    if (fpl->parsed()) {
      GridFamily fam = grid_family_from_string(grid_name);
      if (fam == GridFamily::GV && n % 2 == 1) fam = GridFamily::GVOdd;
      if (fam == GridFamily::GHT && n % 2 == 1) fam = GridFamily::GHTOdd;
      const GridSpec g = make_grid(fam, n, numbering_from_string(numbering));
      CensusOptions opt;
      opt.threads = threads;
      opt.cache_dir = no_cache ? std::filesystem::path() : default_cache_dir();
      opt.verify_cache = verify_cache;
      if (!svg_dir.empty()) opt.svg_dir = svg_dir;
      const Census c = census(g, opt);
      if (f == Format::Json) {
        std::cout << census_to_json(c);
      } else {
        std::vector<std::pair<std::string, std::string>> rows;
        for (const auto& [k, v] : c.counts) rows.push_back({k, v.get_str()});
        print_pairs(rows, "matching", "count", f);
        if (f == Format::Text) std::cout << "total  " << c.total << "\n";
      }
      return 0;
    }
    if (nests->parsed()) {
      VerifyContext ctx;
      ctx.census_options.cache_dir = default_cache_dir();
      const auto r = verify_nests(nest_family_from_string(family), n, ctx);
      print_report(r, f);
      return status_code(r.overall());
    }
    if (formula->parsed()) return run_formula(formula_name, formula_args, family, n_max, f);
    if (verify->parsed()) {
      std::string line = verify_args.front() + " =";
      for (std::size_t i = 1; i < verify_args.size(); ++i) line += " " + verify_args[i];
      SuiteConfig cfg = parse_suite_config(line);
      const auto result = run_suite(cfg);
      for (const auto& r : result.reports) print_report(r, f);
      return status_code(result.overall());
    }
    if (suite->parsed()) {
      const SuiteConfig cfg = load_suite_config(config_path);
      const auto result = run_suite(cfg);
      if (!out_dir.empty()) write_suite_reports(result, out_dir);
      if (f == Format::Json) std::cout << suite_to_json(result);
      else if (f == Format::Csv) for (const auto& r : result.reports) print_report(r, f);
      else std::cout << suite_to_text(result);
      return status_code(result.overall());
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "tl: " << e.what() << "\n";
    return 1;
  } catch (const KernelError& e) {
    std::cerr << "tl: " << e.what() << "\n";
    return 1;
  } catch (const Usage& e) {
    std::cerr << "tl: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "tl: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "tl: missing argument\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tl: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
