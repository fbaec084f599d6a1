#include "tl/suite.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tl {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int to_int(const std::string& s, int line) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ConfigError("line " + std::to_string(line) + ": '" + s + "' is not an integer");
  }
  return v;
}

VerificationReport publish_steady(Boundary bc, int n, VerifyContext& ctx) {
  VerificationReport r;
  r.subject = "steady " + std::string(to_string(bc)) + " " + std::to_string(n);
  if (!stationary_within_budget(bc, n, ctx.budgets)) {
    r.skip("stationary state", "over budget");
    return r;
  }
  const auto& st = ctx.stationary(bc, n);
  const auto stats = state_statistics(st);
  r.add("dimension", std::to_string(st.basis.size()), std::to_string(st.coefficients.size()),
        "published without a verification target");
  std::ostringstream out;
  for (std::size_t i = 0; i < st.basis.size(); ++i) out << (i ? " " : "") << st.basis[i] << ":" << st.coefficients[i];
  r.notes.push_back("sum " + stats.sum.get_str() + ", max " + stats.max.get_str());
  r.notes.push_back(out.str());
  return r;
}

VerificationReport run_item(const SuiteItem& item, VerifyContext& ctx) {
  const auto w = words(item.value);
  auto need = [&](std::size_t k) {
    if (w.size() != k) {
      throw ConfigError("line " + std::to_string(item.line) + ": " + item.key + " takes " + std::to_string(k) +
                        " values");
    }
  };
  if (item.key == "rs" || item.key == "steady") {
    need(2);
    Boundary bc;
    try {
      bc = boundary_from_string(w[0]);
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(item.line) + ": " + e.what());
    }
    const int n = to_int(w[1], item.line);
    return item.key == "rs" ? verify_rs(bc, n, ctx) : publish_steady(bc, n, ctx);
  }
  if (item.key == "nests") {
    need(2);
    NestFamily f;
    try {
      f = nest_family_from_string(w[0]);
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(item.line) + ": " + e.what());
    }
    return verify_nests(f, to_int(w[1], item.line), ctx);
  }
  if (item.key == "hex") {
    if (w.size() == 3) return verify_hex(to_int(w[0], item.line), to_int(w[1], item.line), to_int(w[2], item.line), ctx);
    need(6);
    return verify_hex(to_int(w[3], item.line), to_int(w[4], item.line), to_int(w[5], item.line), ctx,
                      to_int(w[0], item.line), to_int(w[1], item.line), to_int(w[2], item.line));
  }
  if (item.key == "identities") {
    need(1);
    return verify_identities(to_int(w[0], item.line));
  }
  if (item.key == "strange") {
    need(1);
    return verify_strange(to_int(w[0], item.line));
  }
  if (item.key == "table") {
    need(1);
    try {
      return verify_nest_table(nest_family_from_string(w[0]));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("line " + std::to_string(item.line) + ": " + e.what());
    }
  }
  throw ConfigError("line " + std::to_string(item.line) + ": unknown key '" + item.key + "'");
}

}  // namespace

SuiteConfig parse_suite_config(std::string_view text) {
  SuiteConfig c;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
    if (key == "budget.closed") c.budgets.closed = to_int(value, line_no);
    else if (key == "budget.periodic") c.budgets.periodic = to_int(value, line_no);
    else if (key == "budget.mixed") c.budgets.mixed = to_int(value, line_no);
    else if (key == "budget.open") c.budgets.open = to_int(value, line_no);
    else if (key == "budget.census.plain") c.budgets.census.plain = to_int(value, line_no);
    else if (key == "budget.census.symmetric") c.budgets.census.symmetric = to_int(value, line_no);
    else if (key == "threads") c.threads = to_int(value, line_no);
    else if (key == "cache") c.cache_dir = value;
    else if (key == "rs" || key == "nests" || key == "hex" || key == "identities" || key == "strange" ||
             key == "table" || key == "steady") {
      c.items.push_back({key, value, line_no});
    } else {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_suite_config(ss.str());
}

Status SuiteResult::overall() const {
  for (const auto& r : reports) {
    if (r.overall() == Status::Fail) return Status::Fail;
  }
  return Status::Pass;
}

SuiteResult run_suite(const SuiteConfig& config) {
  VerifyContext ctx;
  ctx.budgets = config.budgets;
  ctx.census_options.budget = config.budgets.census;
  ctx.census_options.threads = config.threads;
  ctx.census_options.cache_dir = config.cache_dir.empty() ? default_cache_dir() : config.cache_dir;
  SuiteResult result;
  for (const auto& item : config.items) {
    try {
      result.reports.push_back(run_item(item, ctx));
    } catch (const ConfigError&) {
      throw;
    } catch (const BudgetExceeded& e) {
      VerificationReport r;
      r.subject = item.key + " " + item.value;
      r.skip(item.value, e.what());
      result.reports.push_back(std::move(r));
    } catch (const std::exception& e) {
      VerificationReport r;
      r.subject = item.key + " " + item.value;
      r.cases.push_back({item.value, "", "", Status::Fail, std::string("error: ") + e.what()});
      result.reports.push_back(std::move(r));
    }
  }
  return result;
}

std::string suite_to_json(const SuiteResult& result) {
  nlohmann::ordered_json j;
  j["overall"] = to_string(result.overall());
  auto& reports = j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : result.reports) reports.push_back(nlohmann::ordered_json::parse(report_to_json(r)));
  return j.dump(2) + "\n";
}

std::string suite_to_text(const SuiteResult& result) {
  std::string out;
  for (const auto& r : result.reports) out += report_to_text(r);
  out += "suite: " + std::string(to_string(result.overall())) + "\n";
  return out;
}

void write_suite_reports(const SuiteResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "suite.json") << suite_to_json(result);
  std::ofstream(dir / "suite.txt") << suite_to_text(result);
}

}  // namespace tl
