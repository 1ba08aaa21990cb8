// Command-line front end: configuration loading, command dispatch, report
// emission. Exit codes: 0 computation done / checks passed, 1 a
// verification failed (report carries the certificate), 2 usage or
// configuration error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genwitt/report.hpp"
#include "genwitt/witt.hpp"

using namespace genwitt;

namespace {

GroupElem parse_point(const std::string& s, int n) {
  std::size_t i = 0;
  detail::expect(s, i, '(');
  auto parts = detail::split_list(s, i, ')');
  if (static_cast<int>(parts.size()) != n)
    throw config_error("point " + s + " must have " + std::to_string(n) +
                       " coordinates");
  GroupElem a;
  for (auto& p : parts) a.push_back(Int(p));
  return a;
}

DVector parse_dvector(const std::string& s, int r) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (static_cast<int>(parts.size()) != r)
    throw config_error("coefficient vector must have " + std::to_string(r) +
                       " entries");
  DVector d;
  for (auto& p : parts) d.push_back(parse_scalar(p));
  return d;
}

struct Common {
  std::string config;
  std::string format = "tsv";
  int jobs = 1;
  long window = 0;    // overrides box when > 0
  long opwindow = 0;  // overrides opbox when > 0
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string module_spec;
  std::string sigma_csv;
};

void add_common(CLI::App* cmd, Common& c, bool needs_config = true) {
  if (needs_config)
    cmd->add_option("config", c.config, "JSON config file")->required();
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"tsv", "json"}));
  cmd->add_option("--jobs", c.jobs, "worker cap");
  cmd->add_option("--window", c.window, "fiber box bound override");
  cmd->add_option("--opwindow", c.opwindow, "operator box bound override");
  cmd->add_option("--seed", c.seed, "PRNG seed override")
      ->each([&c](const std::string&) { c.seed_set = true; });
  cmd->add_option("--module", c.module_spec, "module override, e.g. wedge:1");
  cmd->add_option("--sigma", c.sigma_csv, "sigma override, comma separated");
}

struct Loaded {
  Config cfg;
  DatumHandles datum;
  ModuleDesc desc;
  Window win;
  std::uint64_t seed;
};

Loaded load(const Common& c) {
  Loaded l{load_config(c.config), {}, {}, {}, 0};
  l.datum = make_datum(l.cfg);
  LModule v = c.module_spec.empty()
                  ? make_lmodule(l.cfg.module_spec, *l.datum.pairing,
                                 l.datum.frame.get())
                  : parse_module_spec(c.module_spec, *l.datum.pairing,
                                      l.datum.frame.get());
  std::vector<Scalar> sigma = l.cfg.sigma;
  if (!c.sigma_csv.empty()) {
    DVector s = parse_dvector(c.sigma_csv, l.cfg.r);
    sigma.assign(s.begin(), s.end());
  }
  l.desc = make_desc(l.datum.pairing, l.datum.frame, v, sigma);
  l.win.box = c.window > 0 ? c.window : l.cfg.windows.box;
  l.win.opbox = c.opwindow > 0 ? c.opwindow : l.cfg.windows.opbox;
  l.seed = c.seed_set ? c.seed : l.cfg.seed;
  return l;
}

void emit(const Common& c, const json& j, const std::string& tsv) {
  if (c.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << tsv;
}

WittElem random_witt(Prng& rng, const Pairing& p, int terms = 2, long window = 2) {
  WittElem x;
  for (int t = 0; t < terms; ++t)
    x.add_term(rng.point(p.n(), window), rng.dvector(p.r(), 2));
  return x;
}

int cmd_check(const Common& c) {
  Loaded l = load(c);
  const Pairing& p = *l.datum.pairing;
  Prng rng(l.seed);
  bool ok = true;
  auto line = [&](const std::string& name, bool pass) {
    std::cout << (pass ? "PASS" : "FAIL") << "\t" << name << "\n";
    ok = ok && pass;
  };

  {
    bool pass = true;
    for (int t = 0; t < 100 && pass; ++t) {
      WittElem x = random_witt(rng, p), y = random_witt(rng, p),
               z = random_witt(rng, p);
      WittElem jac = bracket(p, x, bracket(p, y, z)) +
                     bracket(p, y, bracket(p, z, x)) +
                     bracket(p, z, bracket(p, x, y));
      if (!jac.is_zero()) pass = false;
      if (!bracket(p, x, x).is_zero()) pass = false;
    }
    line("bracket: Jacobi + antisymmetry (100 random triples)", pass);
  }

  {
    bool pass = true;
    for (int t = 0; t < 100 && pass; ++t) {
      GroupElem a = rng.point(p.n(), 2), a2 = rng.point(p.n(), 2);
      DVector d = rng.dvector(p.r(), 2), d2 = rng.dvector(p.r(), 2);
      TensorVec v;
      GroupElem b = rng.point(p.n(), l.win.box);
      for (int i = 0; i < l.desc.v.dim; ++i)
        v.add_term({b, i}, Scalar(Rat(rng.unif(-2, 2))));
      if (v.is_zero()) continue;
      TensorVec lhs = act(l.desc, a, d, act(l.desc, a2, d2, v)) -
                      act(l.desc, a2, d2, act(l.desc, a, d, v));
      TensorVec rhs =
          act_witt(l.desc, bracket(p, witt_term(a, d), witt_term(a2, d2)), v);
      if (!(lhs - rhs == TensorVec{})) pass = false;
    }
    line("module: commutator residual (100 random instances)", pass);
  }

  {
    bool pass = true;
    for (int t = 0; t < 100 && pass; ++t) {
      GroupElem a = rng.point(p.n(), 2), a2 = rng.point(p.n(), 2);
      DVector d = rng.dvector(p.r(), 2);
      GroupElem b = rng.point(p.n(), l.win.box);
      TensorVec v = basis_vec(b, rng.unif(0, l.desc.v.dim - 1));
      TensorVec lhs = act(l.desc, a, d, a_act(a2, v)) - a_act(a2, act(l.desc, a, d, v));
      TensorVec rhs = p.pair(a2, d) * a_act(a + a2, v);
      if (!(lhs == rhs)) pass = false;
    }
    line("module: group-algebra compatibility (100 random instances)", pass);
  }

  {
    auto k1 = k1_basis(p);
    auto k2 = k2_basis(p);
    SMat stack(static_cast<int>(k1.size() + k2.size()), p.n() * p.r());
    int row = 0;
    for (const auto& m : k1) {
      for (int i = 0; i < p.n(); ++i)
        for (int j = 0; j < p.r(); ++j) stack.at(row, i * p.r() + j) = m.at(i, j);
      ++row;
    }
    for (const auto& m : k2) {
      for (int i = 0; i < p.n(); ++i)
        for (int j = 0; j < p.r(); ++j) stack.at(row, i * p.r() + j) = m.at(i, j);
      ++row;
    }
    long dim_sum = rank(stack);
    long rbar = p.rbar();
    line("quotient: n*r = dim(K1+K2) + rbar^2",
         static_cast<long>(p.n()) * p.r() == dim_sum + rbar * rbar);
  }

  if (l.datum.frame && l.desc.sigma_ker2_zero && l.datum.frame->rbar >= 1) {
    WedgeTower tower = make_tower(l.datum.pairing, l.datum.frame, l.desc.sigma);
    bool pass = true;
    for (const auto& b : box_points(p.n(), 1)) {
      for (int k = 0; k + 1 < tower.rbar() && pass; ++k) {
        for (int i = 0; i < tower.at(k).v.dim; ++i) {
          TensorVec two = chain_map(tower, k + 1, chain_map(tower, k, basis_vec(b, i)));
          if (!two.is_zero()) pass = false;
        }
      }
    }
    for (int t = 0; t < 30 && pass; ++t) {
      int k = static_cast<int>(rng.unif(0, tower.rbar() - 1));
      GroupElem a = rng.point(p.n(), 2);
      DVector d = rng.dvector(p.r(), 2);
      TensorVec v = basis_vec(rng.point(p.n(), l.win.box),
                              rng.unif(0, tower.at(k).v.dim - 1));
      TensorVec lhs = chain_map(tower, k, act(tower.at(k), a, d, v));
      TensorVec rhs = act(tower.at(k + 1), a, d, chain_map(tower, k, v));
      if (!(lhs == rhs)) pass = false;
    }
    line("chain: square zero + intertwining", pass);
  }

  return ok ? 0 : 1;
}

int cmd_bracket(const Common& c, const std::string& xs, const std::string& ys) {
  Loaded l = load(c);
  WittElem x = parse_witt(xs, l.cfg.n, l.cfg.r);
  WittElem y = parse_witt(ys, l.cfg.n, l.cfg.r);
  WittElem z = bracket(*l.datum.pairing, x, y);
  json j;
  j["result"] = render(z);
  emit(c, j, render(z) + "\n");
  return 0;
}

int cmd_act(const Common& c, const std::string& as, const std::string& ds,
            const std::string& bs, int index) {
  Loaded l = load(c);
  GroupElem a = parse_point(as, l.cfg.n);
  DVector d = parse_dvector(ds, l.cfg.r);
  GroupElem b = parse_point(bs, l.cfg.n);
  TensorVec v = act(l.desc, a, d, basis_vec(b, index));
  json j;
  j["result"] = to_json(v);
  emit(c, j, render(v) + "\n");
  return 0;
}

int cmd_fiber(const Common& c, int kopt) {
  Loaded l = load(c);
  if (!l.datum.frame) throw config_error("fiber tables need a frame");
  if (!l.desc.sigma_ker2_zero)
    throw config_error("fiber tables need sigma to kill Ker2(phi)");
  WedgeTower tower = make_tower(l.datum.pairing, l.datum.frame, l.desc.sigma);
  std::ostringstream out;
  out << "b\tk\timage_dim\tkernel_dim\n";
  json rows = json::array();
  for (const auto& b : box_points(l.cfg.n, l.win.box)) {
    for (int k = 0; k <= tower.rbar(); ++k) {
      if (kopt >= 0 && k != kopt) continue;
      std::string img = "-", ker = "-";
      json r;
      r["b"] = ge_str(b);
      r["k"] = k;
      if (k >= 1) {
        img = std::to_string(gamma_fiber(tower, b, k).size());
        r["image_dim"] = gamma_fiber(tower, b, k).size();
      }
      if (k < tower.rbar()) {
        ker = std::to_string(tilde_fiber(tower, b, k).size());
        r["kernel_dim"] = tilde_fiber(tower, b, k).size();
      }
      out << ge_str(b) << "\t" << k << "\t" << img << "\t" << ker << "\n";
      rows.push_back(r);
    }
  }
  emit(c, rows, out.str());
  return 0;
}

int cmd_pi(const Common& c, int k, const std::string& bs, int index) {
  Loaded l = load(c);
  if (!l.datum.frame) throw config_error("chain maps need a frame");
  WedgeTower tower = make_tower(l.datum.pairing, l.datum.frame, l.desc.sigma);
  GroupElem b = parse_point(bs, l.cfg.n);
  TensorVec v = chain_map(tower, k, basis_vec(b, index));
  json j;
  j["result"] = to_json(v);
  emit(c, j, render(v) + "\n");
  return 0;
}

int cmd_simplicity(const Common& c) {
  Loaded l = load(c);
  SimplicityReport rep = simplicity_report(l.desc, l.win, l.seed, 5000, c.jobs);
  json j = to_json(rep);
  std::string verdict = j["verdict"].get<std::string>();
  emit(c, j, verdict + "\n");
  bool failed = rep.verdict == SimplicityReport::Verdict::proper_submodule &&
                !rep.invariance_verified;
  return failed ? 1 : 0;
}

int cmd_iso(const Common& c, const std::string& shift, bool psi, int sep_i, int sep_j,
            int count) {
  Loaded l = load(c);
  Prng rng(l.seed);
  json j;
  bool ok = true;
  if (!shift.empty()) {
    GroupElem a = parse_point(shift, l.cfg.n);
    ShiftIso iso = iso_shift(l.desc, a);
    auto res = check_intertwiner(l.desc, iso.target,
                                 [&](const TensorVec& v) { return iso(v); }, l.win,
                                 count, rng);
    j["kind"] = "shift";
    j["a"] = ge_str(a);
    j["ok"] = res.ok;
    j["instances"] = res.instances;
    if (!res.ok) j["failure"] = res.failure;
    ok = res.ok;
  } else if (psi) {
    PsiIso iso = iso_psi_rank1(l.desc);
    auto res = check_intertwiner(iso.tower->at(0), iso.tower->at(1),
                                 [&](const TensorVec& v) { return iso(v); }, l.win,
                                 count, rng);
    j["kind"] = "psi";
    j["ok"] = res.ok;
    j["instances"] = res.instances;
    if (!res.ok) j["failure"] = res.failure;
    ok = res.ok;
  } else if (sep_i >= 0 && sep_j >= 0) {
    if (!l.datum.frame) throw config_error("separation needs a frame");
    WedgeTower tower = make_tower(l.datum.pairing, l.datum.frame, l.desc.sigma);
    auto cert = separate(tower, sep_i, sep_j, l.win);
    j["kind"] = "separate";
    j["levels"] = {sep_i, sep_j};
    j["found"] = cert.has_value();
    if (cert) j["certificate"] = to_json(*cert);
    ok = cert.has_value();
  } else {
    throw config_error("iso: pick one of --shift, --psi, --separate");
  }
  emit(c, j, j.dump() + "\n");
  return ok ? 0 : 1;
}

int cmd_fingerprint(const Common& c, const std::string& submodule) {
  Loaded l = load(c);
  Fingerprint fp;
  if (submodule.empty() || submodule == "full") {
    fp = fingerprint(l.desc, l.win);
  } else {
    if (!l.datum.frame) throw config_error("submodule fingerprints need a frame");
    auto tower = std::make_shared<WedgeTower>(
        make_tower(l.datum.pairing, l.datum.frame, l.desc.sigma));
    auto colon = submodule.find(':');
    if (colon == std::string::npos)
      throw config_error("submodule spec must be gamma:K or tilde:K");
    std::string kind = submodule.substr(0, colon);
    int k = std::stoi(submodule.substr(colon + 1));
    CandidateSpace cand(
        submodule, [tower, kind, k](const GroupElem& b) {
          return kind == "gamma" ? gamma_fiber(*tower, b, k)
                                 : tilde_fiber(*tower, b, k);
        });
    fp = fingerprint(tower->at(kind == "gamma" ? k : k), l.win, &cand);
  }
  emit(c, to_json(fp), tsv_fingerprint(fp));
  return 0;
}

int cmd_verma(const Common& c, long depth, const std::string& offset_str,
              long offsets_box, long raisewin_flag) {
  Loaded l = load(c);
  HwtSpec spec = make_hwt(l.cfg, l.datum);
  std::vector<GroupElem> offsets;
  if (!offset_str.empty()) {
    offsets.push_back(parse_point(offset_str, spec.n0()));
  } else {
    offsets = box_points(spec.n0(), offsets_box);
  }
  long partwin = c.window > 0 ? c.window : l.cfg.windows.partwin;
  long raisewin = raisewin_flag > 0 ? raisewin_flag : l.cfg.windows.raisewin;
  auto table = hc_table(spec, depth, offsets, partwin, raisewin, c.jobs);
  emit(c, to_json(table), tsv_hc_table(table));
  for (const auto& cell : table)
    if (!cell.stabilized) return 1;
  return 0;
}

int cmd_growth(const Common& c) {
  Loaded l = load(c);
  if (l.cfg.growth_spec.is_null())
    throw config_error("/growth: section required for the growth command");
  HwtSpec spec = make_hwt(l.cfg, l.datum);
  const json& g = l.cfg.growth_spec;
  std::vector<GroupElem> betas;
  for (std::size_t i = 0; i < g.at("betas").size(); ++i)
    betas.push_back(cfgdetail::need_point(g.at("betas")[i], spec.n0(),
                                          "/growth/betas/" + std::to_string(i)));
  DVector lower_d = parse_dvector(g.at("lower_d").get<std::string>(), l.cfg.r);
  std::vector<DVector> raise_ds;
  for (const auto& rd : g.at("raise_d"))
    raise_ds.push_back(parse_dvector(rd.get<std::string>(), l.cfg.r));
  GrowthResult res = growth_probe(spec, betas, lower_d, raise_ds);
  emit(c, to_json(res), "rank\t" + std::to_string(res.rank) + "\n");
  return res.rank == res.s ? 0 : 1;
}

int cmd_examples(const std::vector<std::string>& names) {
  std::vector<std::string> todo = names;
  if (!todo.empty() && todo.front() == "run") todo.erase(todo.begin());
  if (todo.empty()) {
    std::cout << "example1\nexample2\n";
    return 0;
  }
  for (const auto& name : todo) {
    if (name == "example1")
      std::cout << run_example1();
    else if (name == "example2")
      std::cout << run_example2();
    else
      throw config_error("unknown example '" + name + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with generalized Witt algebra modules"};
  app.require_subcommand(1);

  Common c;
  std::string xs, ys, as, ds, bs, shift, submodule, offset_str;
  int index = 0, kopt = -1, sep_i = -1, sep_j = -1, count = 300;
  long depth = 3, offsets_box = 0, raisewin_flag = 0;
  bool psi = false;
  std::vector<std::string> example_names;

  auto* check = app.add_subcommand("check", "run the property suite for a datum");
  add_common(check, c);

  auto* br = app.add_subcommand("bracket", "Lie bracket of two elements");
  add_common(br, c);
  br->add_option("--x", xs)->required();
  br->add_option("--y", ys)->required();

  auto* acmd = app.add_subcommand("act", "apply t^a d to a basis vector");
  add_common(acmd, c);
  acmd->add_option("--a", as)->required();
  acmd->add_option("--d", ds)->required();
  acmd->add_option("--b", bs)->required();
  acmd->add_option("--index", index);

  auto* fib = app.add_subcommand("fiber", "fiber dimension tables");
  add_common(fib, c);
  fib->add_option("--k", kopt);

  auto* pi = app.add_subcommand("pi", "apply the chain map to a basis vector");
  add_common(pi, c);
  pi->add_option("--k", kopt)->required();
  pi->add_option("--b", bs)->required();
  pi->add_option("--index", index);

  auto* simp = app.add_subcommand("simplicity", "simplicity decision with certificate");
  add_common(simp, c);

  auto* iso = app.add_subcommand("iso", "isomorphism checks and separations");
  add_common(iso, c);
  iso->add_option("--shift", shift);
  iso->add_flag("--psi", psi);
  iso->add_option("--separate", [&sep_i, &sep_j](const std::vector<std::string>& v) {
    if (v.size() != 2) return false;
    sep_i = std::stoi(v[0]);
    sep_j = std::stoi(v[1]);
    return true;
  }, "two image levels to separate")->expected(2);
  iso->add_option("--count", count);

  auto* fp = app.add_subcommand("fingerprint", "per-fiber dimension fingerprint");
  add_common(fp, c);
  fp->add_option("--submodule", submodule, "gamma:K, tilde:K or full");

  auto* verma = app.add_subcommand("verma", "multiplicity lower-bound table");
  add_common(verma, c);
  verma->add_option("--depth", depth)->required();
  verma->add_option("--offset", offset_str);
  verma->add_option("--offsets-box", offsets_box);
  verma->add_option("--raisewin", raisewin_flag);

  auto* growth = app.add_subcommand("growth", "first-level independence probe");
  add_common(growth, c);

  auto* ex = app.add_subcommand("examples", "built-in golden runs");
  ex->add_option("names", example_names, "example names (or 'run NAME')");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(check)) return cmd_check(c);
    if (app.got_subcommand(br)) return cmd_bracket(c, xs, ys);
    if (app.got_subcommand(acmd)) return cmd_act(c, as, ds, bs, index);
    if (app.got_subcommand(fib)) return cmd_fiber(c, kopt);
    if (app.got_subcommand(pi)) return cmd_pi(c, kopt, bs, index);
    if (app.got_subcommand(simp)) return cmd_simplicity(c);
    if (app.got_subcommand(iso)) return cmd_iso(c, shift, psi, sep_i, sep_j, count);
    if (app.got_subcommand(fp)) return cmd_fingerprint(c, submodule);
    if (app.got_subcommand(verma))
      return cmd_verma(c, depth, offset_str, offsets_box, raisewin_flag);
    if (app.got_subcommand(growth)) return cmd_growth(c);
    if (app.got_subcommand(ex)) return cmd_examples(example_names);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
