#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tl/fpl.hpp"

namespace tl {

namespace {

constexpr int kSchema = 1;

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void Census::merge(const Census& other) {
  for (const auto& [k, v] : other.counts) counts[k] += v;
  total += other.total;
}

bool within_budget(const GridSpec& g, const CensusBudget& b) {
  const bool plain = g.symmetry == Symmetry::None && g.family != GridFamily::GVOdd;
  return g.square <= (plain ? b.plain : b.symmetric);
}

std::filesystem::path default_cache_dir() {
  const char* dir = std::getenv("TL_CACHE_DIR");
  return dir && *dir ? std::filesystem::path(dir) : std::filesystem::path();
}

std::filesystem::path cache_file(const std::filesystem::path& dir, const GridSpec& g) {
  std::string name = "census-" + std::string(to_string(g.family)) + "-" + std::to_string(g.n);
  if (g.numbering == Numbering::Clockwise) name += "-cw";
  return dir / (name + ".json");
}

std::string census_to_json(const Census& c) {
  nlohmann::ordered_json j;
  j["schema"] = kSchema;
  j["family"] = to_string(c.grid.family);
  j["n"] = c.grid.n;
  j["numbering"] = to_string(c.grid.numbering);
  j["matching_class"] = to_string(c.grid.matching_class);
  j["total"] = c.total.get_str();
  auto& counts = j["counts"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.counts) counts[k] = v.get_str();
  return j.dump(2) + "\n";
}

Census census_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GridError(std::string("malformed census: ") + e.what());
  }
  if (!j.contains("schema") || j["schema"] != kSchema) throw GridError("unsupported census schema");
  try {
    Census c;
    c.grid = make_grid(grid_family_from_string(j.at("family").get<std::string>()), j.at("n").get<int>(),
                       numbering_from_string(j.value("numbering", std::string("ccw"))));
    for (const auto& [k, v] : j.at("counts").items()) c.counts[k] = mpz_class(v.get<std::string>());
    c.total = mpz_class(j.at("total").get<std::string>());
    mpz_class sum = 0;
    for (const auto& [k, v] : c.counts) sum += v;
    if (sum != c.total) throw GridError("census total does not match its counts");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw GridError(std::string("malformed census: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw GridError(std::string("malformed census: ") + e.what());
  }
}

Census census(const GridSpec& g, const CensusOptions& opt) {
  if (!within_budget(g, opt.budget)) {
    throw BudgetExceeded(std::string(to_string(g.family)) + "(" + std::to_string(g.n) + ") needs a " +
                         std::to_string(g.square) + "-square, over budget");
  }
  std::optional<Census> cached;
  std::filesystem::path path;
  if (!opt.cache_dir.empty()) {
    path = cache_file(opt.cache_dir, g);
    if (std::filesystem::exists(path)) {
      cached = census_from_json(slurp(path));
      if (!opt.verify_cache && !opt.svg_dir) return *cached;
    }
  }

  int threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, threads);
  std::vector<Census> parts(static_cast<std::size_t>(threads));
  for_each_fpl_parallel(g, threads, [&](int w, const FplConfig& f) {
    auto& part = parts[static_cast<std::size_t>(w)];
    part.counts[extract_matching(f, g)] += 1;
    part.total += 1;
  });
  Census c;
  c.grid = g;
  for (const auto& p : parts) c.merge(p);

  if (opt.svg_dir) {
    std::filesystem::create_directories(*opt.svg_dir);
    int k = 0;
    for_each_fpl(g, [&](const FplConfig& f) {
      char name[64];
      std::snprintf(name, sizeof name, "%s-%d-%05d.svg", std::string(to_string(g.family)).c_str(), g.n, ++k);
      std::ofstream(*opt.svg_dir / name) << fpl_to_svg(f, g);
    });
  }

  if (cached) {
    if (cached->counts != c.counts || cached->total != c.total) {
      throw GridError("cached census " + path.string() + " disagrees with the enumeration");
    }
  } else if (!path.empty()) {
    write_atomically(path, census_to_json(c));
  }
  return c;
}

std::string fpl_to_svg(const FplConfig& f, const GridSpec& g) {
  constexpr int step = 24;
  constexpr int margin = 24;
  const int w = 2 * margin + step * (f.cols - 1);
  const int h = 2 * margin + step * (f.rows - 1);
  auto x = [&](double c) { return margin + step * c; };
  auto y = [&](double r) { return margin + step * r; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  out << "<title>" << to_string(g.family) << "(" << g.n << ") " << extract_matching(f, g) << "</title>\n";
  out << "<g stroke=\"#c8c8c8\" stroke-width=\"1\">\n";
  for (int r = 0; r < f.rows; ++r) out << "<line x1=\"" << x(0) << "\" y1=\"" << y(r) << "\" x2=\"" << x(f.cols - 1) << "\" y2=\"" << y(r) << "\"/>\n";
  for (int c = 0; c < f.cols; ++c) out << "<line x1=\"" << x(c) << "\" y1=\"" << y(0) << "\" x2=\"" << x(c) << "\" y2=\"" << y(f.rows - 1) << "\"/>\n";
  out << "</g>\n<g stroke=\"#1f4e9a\" stroke-width=\"4\" stroke-linecap=\"round\">\n";
  for (int r = 0; r < f.rows; ++r) {
    for (int c = 0; c <= f.cols; ++c) {
      if (!f.h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) continue;
      out << "<line x1=\"" << x(c - (c == 0 ? 0.6 : 1.0)) << "\" y1=\"" << y(r) << "\" x2=\""
          << x(c == f.cols ? c - 0.4 : c) << "\" y2=\"" << y(r) << "\"/>\n";
    }
  }
  for (int r = 0; r <= f.rows; ++r) {
    for (int c = 0; c < f.cols; ++c) {
      if (!f.v[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) continue;
      out << "<line x1=\"" << x(c) << "\" y1=\"" << y(r - (r == 0 ? 0.6 : 1.0)) << "\" x2=\"" << x(c)
          << "\" y2=\"" << y(r == f.rows ? r - 0.4 : r) << "\"/>\n";
    }
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace tl
