#include "tetrus/cli/runner.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "tetrus/subgroup_graph.hpp"
#include "tetrus/surface/spin.hpp"
#include "tetrus/surface/tetrus_surface.hpp"

#ifndef TETRUS_DATA_DIR
#define TETRUS_DATA_DIR "data"
#endif

namespace tetrus::cli {

namespace {

Value to_value(const cover::FactValue& v) {
  return std::visit([](const auto& x) -> Value { return x; }, v);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Whitespace-insensitive comparison key for list values.
std::string normalize(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t') out += c;
  }
  return out;
}

struct Environment {
  std::map<std::string, GroupDecl> groups;
  std::map<std::string, CyclicHom> homs;
  std::map<std::string, SubgroupGraph> subs;
};

void analyze_into(Report& report, const std::string& name, const SubgroupGraph& g) {
  Section& s = report.add_section("analyze " + name);
  s.add("states", static_cast<long long>(g.state_count()), "vertices of the folded graph");
  s.add("rank", static_cast<long long>(g.rank()), "free rank of the subgroup");
  if (!g.complete()) {
    s.add("index", std::string("infinite"), "graph is not a coset table");
    return;
  }
  s.add("index", static_cast<long long>(g.state_count()));
  const auto spec = cover::MeridianSpec::tangle();
  const auto a = cover::analyze_branched_cover(g, spec);
  const char* names[] = {"meridian.h", "meridian.m"};
  for (std::size_t i = 0; i < a.meridians.size() && i < 2; ++i) {
    s.add(names[i], a.meridians[i].datum.local_degrees,
          "local degrees over " + a.meridians[i].meridian.str());
  }
  s.add("boundary.components", static_cast<long long>(a.boundary_components()), "orbits of Lambda");
  std::vector<long long> chi, genus;
  for (const auto& b : a.boundary) {
    chi.push_back(b.euler_characteristic);
    genus.push_back(b.genus);
  }
  s.add("boundary.euler", chi, "capped boundary components");
  s.add("boundary.genus", genus, "capped boundary components");
}

void surface_into(Report& report, int bound) {
  const auto fs = surface::build_fiber_surface();
  Section& s = report.add_section("surface");
  s.add("F.faces", static_cast<long long>(fs.f.face_count()), "two hexagons and three squares");
  s.add("F.euler", fs.f.euler_characteristic());
  s.add("F.boundary", static_cast<long long>(fs.f.boundary_components()));
  s.add("F.genus", fs.f.genus());
  s.add("monodromy.order", static_cast<long long>(*fs.sigma.order(fs.f)));
  s.add("DF.genus", fs.df.genus());
  s.add("branch.curves", static_cast<long long>(fs.branch.curves.size()));
  s.add("link.components", static_cast<long long>(fs.link.components.size()));
  s.add("link.projected_curves", static_cast<long long>(fs.link.projected.size()));
  const surface::CurveSystem lambdas{fs.link.projected, {}};
  const auto spin = surface::search_spin_system(fs.df, lambdas, bound, {fs.d_sigma, fs.involution});
  s.add("spin.search_bound", static_cast<long long>(bound), "chords per polygon");
  s.add("spin.found", spin.found, spin.message);
  if (!spin.found) return;
  s.add("spin.total_intersections", spin.check.total_geometric);
  s.add("spin.minimum_within_bound", spin.minimum_total);
  s.add("spin.curves_enumerated", static_cast<long long>(spin.curves_enumerated));
  std::ostringstream witness;
  for (std::size_t i = 0; i < spin.system.curves.size(); ++i) {
    witness << "gamma" << i << ": " << surface::describe(fs.df, spin.system.curves[i]) << '\n';
  }
  s.add("spin.witness", witness.str());
  const auto fiber = surface::spun_fiber_genus(fs.df, spin.system, lambdas);
  s.add("fiber.branch_points", fiber.branch_points);
  s.add("fiber.genus", fiber.genus);
}

}  // namespace

std::string default_expected_path() { return std::string(TETRUS_DATA_DIR) + "/theorem1_expected.tsv"; }

std::vector<Expectation> load_expectations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open expected-value table " + path);
  std::vector<Expectation> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(trim(col));
    if (cols.size() < 2 || cols[0].empty() || cols[1].empty()) {
      throw Error(path + ":" + std::to_string(number) + ": expected key<TAB>value<TAB>note");
    }
    out.push_back({cols[0], cols[1], cols.size() > 2 ? cols[2] : "", number});
  }
  return out;
}

void add_pipeline_sections(Report& report, const cover::CoverReport& cover) {
  Section& facts = report.add_section("theorem1");
  for (const auto& f : cover.facts) facts.add(f.key, to_value(f.value), f.note);
  if (!cover.spin_witness.empty()) facts.add("spin.witness", cover.spin_witness, "chords of the witness curves");

  Section& tower = report.add_section("tower");
  for (const auto& level : cover.levels) {
    tower.add(level.name + ".index", static_cast<long long>(level.index));
    for (std::size_t i = 0; i < level.meridian_degrees.size(); ++i) {
      tower.add(level.name + ".meridian" + std::to_string(i + 1), level.meridian_degrees[i], "local degrees");
    }
    tower.add(level.name + ".boundary_components", static_cast<long long>(level.boundary_components));
    tower.add(level.name + ".boundary_genus", level.boundary_genus);
  }
}

bool add_verification_section(Report& report, const cover::CoverReport& cover,
                              const std::vector<Expectation>& expected) {
  Section& s = report.add_section("verification");
  bool all = true;
  for (const auto& e : expected) {
    const auto* f = cover.find(e.key);
    if (!f) {
      s.add(e.key, false, "missing from the computed report; expected " + e.value);
      all = false;
      continue;
    }
    const std::string got = render_value(to_value(f->value));
    const bool ok = normalize(got) == normalize(e.value);
    all = all && ok;
    s.add(e.key, ok, ok ? e.note : "expected " + e.value + ", computed " + got);
  }
  s.add("status", all, all ? "all expectations met" : "mismatch");
  return all;
}

RunResult run(const Script& script, const RunOptions& options) {
  RunResult out;
  Environment env;
  for (const auto& st : script.statements) {
    try {
      std::visit(
          [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, GroupDecl>) {
              env.groups[b.id] = b;
            } else if constexpr (std::is_same_v<T, HomDecl>) {
              const auto& g = env.groups.at(b.group);
              long long ix = 0, ih = 0;
              for (const auto& [gen, r] : b.images) (gen == g.generators[0] ? ix : ih) = r;
              env.homs[b.id] = CyclicHom::make(b.modulus, ix, ih);
            } else if constexpr (std::is_same_v<T, KernelSub>) {
              env.subs[b.id] = kernel_graph(env.homs.at(b.hom));
            } else if constexpr (std::is_same_v<T, GeneratedSub>) {
              env.subs[b.id] = graph_from_generators(b.words);
            } else if constexpr (std::is_same_v<T, DiamondDecl>) {
              env.subs[b.id] = intersect(env.subs.at(b.left), env.subs.at(b.right));
            } else if constexpr (std::is_same_v<T, Analyze>) {
              analyze_into(out.report, b.sub, env.subs.at(b.sub));
            } else if constexpr (std::is_same_v<T, BuildSurface>) {
              surface_into(out.report, options.search_bound);
            } else {
              const auto expected = load_expectations(options.expected_path);
              const auto cover = cover::theorem1_pipeline({options.search_bound});
              add_pipeline_sections(out.report, cover);
              if (!add_verification_section(out.report, cover, expected)) out.exit_code = kExitMismatch;
            }
          },
          st.body);
    } catch (const std::exception& e) {
      Section& err = out.report.add_section("error");
      err.add("statement", std::to_string(st.span.line) + ":" + std::to_string(st.span.column));
      err.add("message", std::string(e.what()));
      out.exit_code = kExitMismatch;
      return out;
    }
  }
  return out;
}

std::string surface_edge_list(int search_bound) {
  const auto fs = surface::build_fiber_surface();
  std::vector<surface::Curve> curves = fs.link.projected;
  const surface::CurveSystem lambdas{fs.link.projected, {}};
  const auto spin = surface::search_spin_system(fs.df, lambdas, search_bound, {fs.d_sigma, fs.involution});
  for (const auto& c : spin.system.curves) curves.push_back(c);
  std::ostringstream os;
  os << "# curves 0-" << fs.link.projected.size() - 1 << " are link projections";
  if (spin.found) os << ", the rest the spin witness";
  os << '\n' << surface::export_edge_list(fs.df, curves);
  return os.str();
}

}  // namespace tetrus::cli
