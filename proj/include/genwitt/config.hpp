#pragma once

// JSON configuration: the datum (G, D, phi), the coefficient module and
// sigma, optional splitting data for highest-weight runs, windows and the
// PRNG seed. Validation reports JSON-pointer style paths.

#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "genwitt/hwt.hpp"
#include "genwitt/tensor.hpp"

namespace genwitt {

using nlohmann::json;

struct WindowsCfg {
  long box = 2;
  long opbox = 1;
  long partwin = 1;
  long raisewin = 1;
};

struct Config {
  long m = 0;
  int n = 0;
  int r = 0;
  SMat p;
  json module_spec;  // {"kind": ...}
  std::vector<Scalar> sigma;
  std::optional<GroupElem> a0;
  std::optional<IMat> g0_basis;
  WindowsCfg windows;
  std::uint64_t seed = 1;
  json hwt_spec;     // optional
  json growth_spec;  // optional
};

namespace cfgdetail {

inline const json& need(const json& j, const std::string& key, const std::string& at) {
  if (!j.contains(key))
    throw config_error(at + "/" + key + ": missing required field");
  return j.at(key);
}

inline long need_int(const json& j, const std::string& key, const std::string& at) {
  const json& v = need(j, key, at);
  if (!v.is_number_integer())
    throw config_error(at + "/" + key + ": expected integer");
  return v.get<long>();
}

inline Scalar need_scalar(const json& v, const std::string& at) {
  if (!v.is_string()) throw config_error(at + ": expected scalar string");
  try {
    return parse_scalar(v.get<std::string>());
  } catch (const parse_error& e) {
    throw config_error(at + ": " + e.what());
  }
}

inline GroupElem need_point(const json& v, int n, const std::string& at) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw config_error(at + ": expected integer array of length " + std::to_string(n));
  GroupElem a;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer())
      throw config_error(at + "/" + std::to_string(i) + ": expected integer");
    a.push_back(Int(v[i].get<long>()));
  }
  return a;
}

inline std::vector<Scalar> need_scalar_array(const json& v, int len,
                                             const std::string& at) {
  if (!v.is_array() || static_cast<int>(v.size()) != len)
    throw config_error(at + ": expected scalar array of length " + std::to_string(len));
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(need_scalar(v[i], at + "/" + std::to_string(i)));
  return out;
}

}  // namespace cfgdetail

inline Config parse_config(const json& j) {
  using namespace cfgdetail;
  Config cfg;
  cfg.m = need_int(need(j, "field", ""), "m", "/field");
  if (!is_square_free(cfg.m))
    throw config_error("/field/m: must be a square-free integer >= 0");
  set_field(cfg.m);

  cfg.n = static_cast<int>(need_int(need(j, "lattice", ""), "n", "/lattice"));
  if (cfg.n < 0) throw config_error("/lattice/n: must be >= 0");

  const json& pv = need(need(j, "pairing", ""), "P", "/pairing");
  if (!pv.is_array() || static_cast<int>(pv.size()) != cfg.n)
    throw config_error("/pairing/P: expected " + std::to_string(cfg.n) + " rows");
  if (cfg.n == 0) throw config_error("/lattice/n: top-level datum needs n >= 1");
  if (!pv[0].is_array() || pv[0].empty())
    throw config_error("/pairing/P/0: expected nonempty row");
  cfg.r = static_cast<int>(pv[0].size());
  cfg.p = SMat(cfg.n, cfg.r);
  for (int i = 0; i < cfg.n; ++i) {
    if (!pv[i].is_array() || static_cast<int>(pv[i].size()) != cfg.r)
      throw config_error("/pairing/P/" + std::to_string(i) + ": expected row of length " +
                         std::to_string(cfg.r));
    for (int k = 0; k < cfg.r; ++k)
      cfg.p.at(i, k) = need_scalar(pv[i][k], "/pairing/P/" + std::to_string(i) + "/" +
                                                 std::to_string(k));
  }

  cfg.module_spec = need(j, "module", "");
  {
    const json& kv = need(cfg.module_spec, "kind", "/module");
    std::string kind = kv.is_string() ? kv.get<std::string>() : "";
    if (kind == "wedge") {
      need_int(cfg.module_spec, "k", "/module");
    } else if (kind == "vc") {
      need_scalar(need(cfg.module_spec, "c", "/module"), "/module/c");
    } else if (kind == "gl" || kind == "direct") {
      if (!need(cfg.module_spec, "matrices", "/module").is_array())
        throw config_error("/module/matrices: expected array");
    } else {
      throw config_error("/module/kind: unknown module kind '" + kind + "'");
    }
  }
  cfg.sigma = need_scalar_array(need(j, "sigma", ""), cfg.r, "/sigma");

  if (j.contains("a0")) cfg.a0 = need_point(j.at("a0"), cfg.n, "/a0");
  if (j.contains("G0")) {
    const json& g = j.at("G0");
    if (!g.is_array() || static_cast<int>(g.size()) != cfg.n - 1)
      throw config_error("/G0: expected " + std::to_string(cfg.n - 1) + " basis rows");
    IMat basis(cfg.n - 1, cfg.n);
    for (int i = 0; i < cfg.n - 1; ++i) {
      GroupElem row = need_point(g[i], cfg.n, "/G0/" + std::to_string(i));
      for (int k = 0; k < cfg.n; ++k) basis.at(i, k) = row[k];
    }
    cfg.g0_basis = basis;
  }

  if (j.contains("windows")) {
    const json& w = j.at("windows");
    auto grab = [&](const char* key, long& slot) {
      if (w.contains(key)) {
        if (!w.at(key).is_number_integer() || w.at(key).get<long>() < 1)
          throw config_error(std::string("/windows/") + key + ": expected integer >= 1");
        slot = w.at(key).get<long>();
      }
    };
    grab("box", cfg.windows.box);
    grab("opbox", cfg.windows.opbox);
    grab("partwin", cfg.windows.partwin);
    grab("raisewin", cfg.windows.raisewin);
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer())
      throw config_error("/seed: expected integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("hwt")) cfg.hwt_spec = j.at("hwt");
  if (j.contains("growth")) cfg.growth_spec = j.at("growth");
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw config_error(path + ": " + e.what());
  }
  return parse_config(j);
}

// Builds the coefficient module named by a config spec. The frame may be
// null only for kinds that act without it.
inline LModule make_lmodule(const json& spec, const Pairing& p, const GlFrame* frame,
                            const std::string& at = "/module") {
  using namespace cfgdetail;
  std::string kind = need(spec, "kind", at).get<std::string>();
  if (kind == "wedge") {
    if (!frame) throw config_error(at + ": wedge module needs a frame");
    long k = need_int(spec, "k", at);
    return wedge_module(*frame, static_cast<int>(k));
  }
  if (kind == "vc") return vc_module(need_scalar(need(spec, "c", at), at + "/c"));
  if (kind == "gl" || kind == "direct") {
    const json& ms = need(spec, "matrices", at);
    int expect = kind == "gl" ? (frame ? frame->rbar * frame->rbar : -1)
                              : p.n() * p.r();
    if (kind == "gl" && !frame) throw config_error(at + ": gl module needs a frame");
    if (!ms.is_array() || static_cast<int>(ms.size()) != expect)
      throw config_error(at + "/matrices: expected " + std::to_string(expect) +
                         " matrices");
    LModule v;
    v.kind = kind == "gl" ? LModule::Kind::glrep : LModule::Kind::direct;
    v.dim = -1;
    for (std::size_t t = 0; t < ms.size(); ++t) {
      const json& mj = ms[t];
      std::string mat = at + "/matrices/" + std::to_string(t);
      if (!mj.is_array()) throw config_error(mat + ": expected matrix rows");
      int dim = static_cast<int>(mj.size());
      if (v.dim < 0) v.dim = dim;
      if (dim != v.dim) throw config_error(mat + ": inconsistent dimension");
      SMat m(dim, dim);
      for (int i = 0; i < dim; ++i) {
        if (!mj[i].is_array() || static_cast<int>(mj[i].size()) != dim)
          throw config_error(mat + "/" + std::to_string(i) + ": expected row of length " +
                             std::to_string(dim));
        for (int c = 0; c < dim; ++c)
          m.at(i, c) = need_scalar(mj[i][c],
                                   mat + "/" + std::to_string(i) + "/" + std::to_string(c));
      }
      v.mats.push_back(std::move(m));
    }
    return v;
  }
  throw config_error(at + "/kind: unknown module kind '" + kind + "'");
}

// Module SPEC strings for command-line overrides: "wedge:K", "vc:C",
// "adjoint".
inline LModule parse_module_spec(const std::string& spec, const Pairing& p,
                                 const GlFrame* frame) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "wedge") {
    if (!frame) throw config_error("wedge module needs a frame");
    return wedge_module(*frame, std::stoi(arg));
  }
  if (kind == "vc") return vc_module(parse_scalar(arg));
  if (kind == "adjoint") return adjoint_module(p.rbar());
  throw config_error("unknown module spec '" + spec + "'");
}

struct DatumHandles {
  std::shared_ptr<const Pairing> pairing;
  std::shared_ptr<const GlFrame> frame;  // null when the lattice kernel is nonzero
};

inline DatumHandles make_datum(const Config& cfg) {
  DatumHandles h;
  h.pairing = std::make_shared<Pairing>(cfg.n, cfg.r, cfg.p);
  if (h.pairing->ker1().rank() == 0)
    h.frame = std::make_shared<GlFrame>(make_frame(*h.pairing));
  return h;
}

// The highest-weight setup: splitting, degree-zero datum, and the bounded
// module X from the config's hwt section.
inline HwtSpec make_hwt(const Config& cfg, const DatumHandles& datum) {
  using namespace cfgdetail;
  if (!cfg.a0) throw config_error("/a0: required for highest-weight commands");
  HwtSpec spec;
  spec.full = datum.pairing;
  if (cfg.g0_basis)
    spec.split = std::make_shared<Splitting>(*cfg.a0, *cfg.g0_basis);
  else
    spec.split = std::make_shared<Splitting>(*cfg.a0);
  spec.p0 = restrict_pairing(*spec.full, *spec.split);

  const json& hj = cfg.hwt_spec.is_null() ? json::object() : cfg.hwt_spec;
  json xj = hj.contains("x") ? hj.at("x") : json::object();
  std::vector<Scalar> sigma =
      xj.contains("sigma")
          ? need_scalar_array(xj.at("sigma"), cfg.r, "/hwt/x/sigma")
          : cfg.sigma;
  std::shared_ptr<const GlFrame> frame0;
  if (spec.p0->ker1().rank() == 0)
    frame0 = std::make_shared<GlFrame>(make_frame(*spec.p0));
  LModule v = xj.contains("module")
                  ? make_lmodule(xj.at("module"), *spec.p0, frame0.get(), "/hwt/x/module")
                  : vc_module(Scalar(0));

  XModule::Realize realize = XModule::Realize::full;
  int image_k = 0;
  if (xj.contains("realize")) {
    const json& rj = xj.at("realize");
    if (rj.is_string() && rj.get<std::string>() == "full") {
      realize = XModule::Realize::full;
    } else if (rj.is_object() && rj.contains("image")) {
      realize = XModule::Realize::image;
      image_k = static_cast<int>(rj.at("image").get<long>());
    } else {
      throw config_error("/hwt/x/realize: expected \"full\" or {\"image\": k}");
    }
  }

  auto desc0 = std::make_shared<ModuleDesc>(make_desc(spec.p0, frame0, v, sigma));
  std::shared_ptr<const WedgeTower> tower0;
  if (realize == XModule::Realize::image) {
    if (!frame0) throw config_error("/hwt/x/realize: image realization needs a frame");
    tower0 = std::make_shared<WedgeTower>(make_tower(spec.p0, frame0, sigma));
  }
  spec.x = std::make_shared<XModule>(desc0, realize, tower0, image_k);
  return spec;
}

}  // namespace genwitt
