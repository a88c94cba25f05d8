// Command-line surface: rips | homology | chern | verify. All output is
// deterministic JSON; exact rationals are serialized as "a/b+c/d*i" strings.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chernlab/chern.hpp"
#include "chernlab/json_io.hpp"
#include "chernlab/verify.hpp"

namespace {

using namespace chernlab;

std::shared_ptr<const FiniteGroup> group_from_arg(const std::string& spec) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("cannot open group file '" + spec + "'");
    json j;
    in >> j;
    return load_group(j);
  }
  return std::make_shared<const FiniteGroup>(parse_group_spec(spec));
}

/// Generator list: comma-separated element indices, or cycles like "[0,1,2]"
/// resolved against the group's one-line permutation labels.
std::vector<int> parse_generators(const FiniteGroup& group, const std::string& text) {
  std::vector<std::string> items;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) items.push_back(cur);
  std::vector<int> out;
  for (const std::string& item : items) {
    if (item.empty()) continue;
    if (item.front() == '[') {
      if (item.back() != ']') throw std::invalid_argument("malformed cycle '" + item + "'");
      std::vector<int> cycle;
      std::string num;
      for (char c : item.substr(1, item.size() - 2)) {
        if (c == ',') {
          cycle.push_back(std::stoi(num));
          num.clear();
        } else {
          num.push_back(c);
        }
      }
      if (!num.empty()) cycle.push_back(std::stoi(num));
      // build the one-line label of the cycle and look it up
      std::size_t n = group.label(group.identity()).size();
      std::string perm;
      for (std::size_t i = 0; i < n; ++i) perm.push_back(static_cast<char>('0' + i));
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        int from = cycle[i], to = cycle[(i + 1) % cycle.size()];
        perm[from] = static_cast<char>('0' + to);
      }
      int found = -1;
      for (int g = 0; g < group.order(); ++g)
        if (group.label(g) == perm) found = g;
      if (found < 0)
        throw std::invalid_argument("cycle '" + item + "' is not an element of this group");
      out.push_back(found);
    } else {
      out.push_back(std::stoi(item));
    }
  }
  return out;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    out << j.dump(2) << "\n";
  }
}

struct CommonArgs {
  std::string group = "cyclic:6";
  std::string gens = "1";
  std::string d = "1";
  int max_dim = kDefaultMaxDim;
  std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--group", args.group, "group spec: cyclic:N | sym:N | product:[a,b] | file.json");
  cmd->add_option("--gens", args.gens, "generators: indices or cycles, e.g. 1,5 or [0,1],[0,1,2]");
  cmd->add_option("--d", args.d, "Rips scale (rational)");
  cmd->add_option("--max-dim", args.max_dim, "simplex dimension cap")
      ->check(CLI::Range(0, kGlobalDimCap));
  cmd->add_option("--out", args.out, "write JSON here instead of stdout");
}

int run(int argc, char** argv) {
  CLI::App app{"exact equivariant cyclic homology and Connes-Chern characters on Rips complexes"};
  app.require_subcommand(1);

  CommonArgs rips_args;
  CLI::App* rips_cmd = app.add_subcommand("rips", "build a Rips complex");
  add_common(rips_cmd, rips_args);

  CommonArgs hom_args;
  std::string theory_name = "simplicial";
  std::string r_arg;
  int degree_arg = -1;
  CLI::App* hom_cmd = app.add_subcommand("homology", "compute Betti numbers and cycle bases");
  add_common(hom_cmd, hom_args);
  hom_cmd->add_option("--theory", theory_name,
                      "simplicial | invariant | cyclic | invariant_cyclic | ordered_reduced | "
                      "twisted_cyclic | twisted_quotient | twisted_invariant | fixed_invariant");
  hom_cmd->add_option("--r", r_arg, "twist scale (default: d)");
  hom_cmd->add_option("--degree", degree_arg, "single degree (default: a range)");

  CommonArgs chern_args;
  std::string kernel_path;
  std::string variant = "twisted";
  int chern_n = 0;
  CLI::App* chern_cmd = app.add_subcommand("chern", "Connes-Chern character of an idempotent pair");
  add_common(chern_cmd, chern_args);
  chern_cmd->add_option("--kernel", kernel_path, "idempotent kernel JSON file")->required();
  chern_cmd->add_option("--n", chern_n, "character degree (even)");
  chern_cmd->add_option("--variant", variant, "twisted | torsion_free");
  chern_args.d.clear();  // default: (n+1) * propagation

  CommonArgs verify_args;
  std::string verify_kernel;
  int verify_n = 2;
  std::uint64_t seed = 1;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the full property suite");
  add_common(verify_cmd, verify_args);
  verify_cmd->add_option("--kernel", verify_kernel, "optional idempotent kernel JSON file");
  verify_cmd->add_option("--n", verify_n, "Chern degree for kernel checks (even)");
  verify_cmd->add_option("--seed", seed, "seed for randomized property checks");

  CLI11_PARSE(app, argc, argv);

  if (rips_cmd->parsed()) {
    auto group = group_from_arg(rips_args.group);
    GeneratingSet gens(*group, parse_generators(*group, rips_args.gens));
    WordMetric wm(gens);
    SimplicialComplex cx = build_rips(group, wm, parse_rational(rips_args.d), rips_args.max_dim);
    emit(complex_to_json(cx), rips_args.out);
    return 0;
  }

  if (hom_cmd->parsed()) {
    auto group = group_from_arg(hom_args.group);
    Rational d = parse_rational(hom_args.d);
    Rational r = r_arg.empty() ? d : parse_rational(r_arg);
    GeneratingSet gens(*group, parse_generators(*group, hom_args.gens));
    WordMetric wm(gens);
    SimplicialComplex cx = build_rips(group, wm, d, hom_args.max_dim);

    std::optional<TwistedSpace> tw;
    std::unique_ptr<ChainContext> ctx;
    bool over_complex = true;
    if (theory_name == "twisted_invariant") {
      tw.emplace(build_twisted_space(cx, r));
      ctx = std::make_unique<ChainContext>(*tw, theories::invariant_simplicial);
      over_complex = false;
    } else if (theory_name == "fixed_invariant") {
      tw.emplace(build_fixed_point_space(cx));
      ctx = std::make_unique<ChainContext>(*tw, theories::invariant_simplicial);
      over_complex = false;
    } else {
      Theory th = theory_from_name(theory_name);
      if (th.base == BaseTheory::g_cyclic || th.base == BaseTheory::g_cyclic_quotient) {
        tw.emplace(build_twisted_space(cx, r));
        ctx = std::make_unique<ChainContext>(*tw, th);
        over_complex = false;
      } else {
        ctx = std::make_unique<ChainContext>(cx, th);
      }
    }

    int lo = 0, hi;
    if (degree_arg >= 0) {
      lo = hi = degree_arg;
    } else if (ctx->theory().base == BaseTheory::simplicial) {
      hi = std::max(0, over_complex ? cx.dim() : tw->base().dim());
    } else {
      hi = hom_args.max_dim;
    }

    json out;
    out["group"] = hom_args.group;
    out["theory"] = theory_name;
    out["d"] = to_string(d);
    if (!over_complex) out["r"] = to_string(r);
    json results = json::array();
    std::vector<int> betti;
    for (int k = lo; k <= hi; ++k) {
      HomologyResult h = homology(*ctx, k);
      betti.push_back(h.betti);
      results.push_back(homology_to_json(h));
    }
    out["betti"] = betti;
    out["results"] = results;
    emit(out, hom_args.out);
    return 0;
  }

  if (chern_cmd->parsed()) {
    std::ifstream in(kernel_path);
    if (!in) throw std::invalid_argument("cannot open kernel file '" + kernel_path + "'");
    json kj;
    in >> kj;
    IdempotentPair p = idempotent_from_json(kj);
    auto group = p.q.group_ptr();
    std::vector<int> gens = parse_generators(*group, chern_args.gens);
    GeneratingSet gen_set(*group, gens);
    WordMetric wm(gen_set);
    Rational d = chern_args.d.empty() ? Rational((chern_n + 1)) * p.q.propagation(wm)
                                      : parse_rational(chern_args.d);
    if (d <= 0) d = 1;
    ChernWorkspace ws(group, gens, d, chern_args.max_dim);
    ChernClass c = variant == "torsion_free" ? chern_torsion_free(ws, p, chern_n)
                                             : chern_twisted(ws, p, chern_n);
    json out;
    out["chern"] = chern_to_json(c);
    json report;
    report["is_idempotent_pair"] = true;  // enforced by the builder
    report["cycle"] = true;               // enforced by the builder
    Rational prop = p.q.propagation(wm);
    Rational diam = support_diameter(ws, c);
    Rational bound = (chern_n + 1) * prop;
    report["propagation"] = to_string(prop);
    report["support_diameter"] = to_string(diam);
    report["locality_bound"] = to_string(bound);
    report["locality_pass"] = diam <= bound;
    out["report"] = report;
    emit(out, chern_args.out);
    return diam <= bound ? 0 : 1;
  }

  // verify
  auto group = group_from_arg(verify_args.group);
  VerifyConfig cfg;
  cfg.group = group;
  cfg.generators = parse_generators(*group, verify_args.gens);
  cfg.d = parse_rational(verify_args.d);
  cfg.max_dim = verify_args.max_dim;
  cfg.chern_n = verify_n;
  cfg.seed = seed;
  if (!verify_kernel.empty()) {
    std::ifstream in(verify_kernel);
    if (!in) throw std::invalid_argument("cannot open kernel file '" + verify_kernel + "'");
    json kj;
    in >> kj;
    cfg.kernel = idempotent_from_json(kj);
    if (!same_group(MatrixKernel(cfg.group, 1), cfg.kernel->q))
      throw std::invalid_argument("kernel group does not match --group");
    cfg.kernel = idempotent_from_json(kj, cfg.group);
  }
  std::vector<CheckResult> checks = verify_suite(cfg);
  json out;
  json list = json::array();
  bool all_pass = true;
  for (const CheckResult& c : checks) {
    json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    if (!c.detail.empty()) j["detail"] = c.detail;
    list.push_back(j);
    all_pass = all_pass && c.pass;
  }
  out["checks"] = list;
  out["all_pass"] = all_pass;
  emit(out, verify_args.out);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
}
