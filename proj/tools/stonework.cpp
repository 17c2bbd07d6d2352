// stonework command line: validation, Stone round trips, twisted germs,
// convolution algebra queries, Cartan reconstruction, and property suites
// over the line-oriented JSON interchange files.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "stonework/cartan.hpp"
#include "stonework/convolution.hpp"
#include "stonework/generators.hpp"
#include "stonework/germ.hpp"
#include "stonework/io.hpp"
#include "stonework/report.hpp"
#include "stonework/suites.hpp"
#include "stonework/twist.hpp"

using namespace stonework;

namespace {

struct CommonOpts {
  std::string out;
  std::string format = "text";
  uint64_t seed = 1;
  size_t cap = 1000000;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out, "write the report (or object) to this path");
  cmd->add_option("--format", o.format, "text|machine")
      ->check(CLI::IsMember({"text", "machine"}));
  cmd->add_option("--seed", o.seed, "random seed for suite-style commands");
  cmd->add_option("--cap", o.cap, "enumeration cap (bisections, span dimensions)");
}

size_t env_cap(size_t cli_cap) {
  const char* e = std::getenv("STONEWORK_CAP");
  if (!e) return cli_cap;
  return static_cast<size_t>(std::strtoull(e, nullptr, 10));
}

int emit(const Report& rep, const CommonOpts& o) {
  std::string text = o.format == "machine" ? serialize(rep.to_json()) : rep.to_text();
  if (!o.out.empty())
    save_text(o.out, text);
  else
    std::cout << text;
  return rep.all_pass() ? 0 : 1;
}

Gpd load_groupoid(const std::string& path) {
  Manifest m = load_manifest(path);
  if (m.kind != "groupoid") throw Error("ParseError", "expected a groupoid file");
  return groupoid_from_json(m.payload);
}

Cocycle load_cocycle(const std::string& path, const Gpd& g) {
  Manifest m = load_manifest(path);
  if (m.kind != "cocycle") throw Error("ParseError", "expected a cocycle file");
  return cocycle_from_json(m.payload, g);
}

Measure load_measure(const std::string& path) {
  Manifest m = load_manifest(path);
  if (m.kind != "measure") throw Error("ParseError", "expected a measure file");
  return measure_from_json(m.payload);
}

void time_report(Report& rep, const std::chrono::steady_clock::time_point& t0) {
  rep.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite Boolean inverse semigroups, groupoids, twists and Cartan pairs"};
  app.require_subcommand(1);

  std::string in1, in2, in3;
  CommonOpts o;

  auto* validate = app.add_subcommand("validate", "validate an interchange file");
  validate->add_option("file", in1)->required();
  std::string validate_gpd, validate_target;
  validate->add_option("--groupoid", validate_gpd,
                       "base groupoid for cocycle/element/bisections/action files");
  validate->add_option("--target", validate_target,
                       "acted-on groupoid for action files (--groupoid is the actor)");
  add_common(validate, o);

  auto* bis = app.add_subcommand("bis", "ample semigroup of a groupoid");
  bis->add_option("groupoid", in1)->required();
  add_common(bis, o);

  auto* germ = app.add_subcommand("germ", "germ groupoid of a Boolean inverse semigroup");
  germ->add_option("semigroup", in1)->required();
  add_common(germ, o);

  auto* roundtrip = app.add_subcommand("roundtrip", "Stone round trips on a groupoid");
  roundtrip->add_option("groupoid", in1)->required();
  add_common(roundtrip, o);

  auto* props = app.add_subcommand("props", "effective / principal / group bundle");
  props->add_option("groupoid", in1)->required();
  add_common(props, o);

  auto* twistgerm = app.add_subcommand("twist-germ", "twisted round trip on (G, sigma)");
  twistgerm->add_option("groupoid", in1)->required();
  twistgerm->add_option("cocycle", in2)->required();
  add_common(twistgerm, o);

  auto* convolve_cmd = app.add_subcommand("convolve", "product and star of two elements");
  convolve_cmd->add_option("groupoid", in1)->required();
  convolve_cmd->add_option("f", in2)->required();
  convolve_cmd->add_option("g", in3)->required();
  std::string cocycle_path;
  convolve_cmd->add_option("--cocycle", cocycle_path, "twist the product by this cocycle");
  add_common(convolve_cmd, o);

  auto* wstar = app.add_subcommand("wstar", "regular representation span and center");
  wstar->add_option("groupoid", in1)->required();
  std::string wstar_cocycle, wstar_measure;
  wstar->add_option("--cocycle", wstar_cocycle);
  wstar->add_option("--measure", wstar_measure);
  add_common(wstar, o);

  auto* refine = app.add_subcommand("refine", "disjoint refinement of a bisection family");
  refine->add_option("groupoid", in1)->required();
  refine->add_option("bisections", in2)->required();
  add_common(refine, o);

  auto* repround = app.add_subcommand("rep-roundtrip", "representation bijection checks");
  repround->add_option("groupoid", in1)->required();
  std::string rep_cocycle, rep_measure;
  repround->add_option("--cocycle", rep_cocycle);
  repround->add_option("--measure", rep_measure);
  add_common(repround, o);

  auto* cartan = app.add_subcommand("cartan", "Cartan pair reconstruction certificate");
  cartan->add_option("algebra", in1)->required();
  add_common(cartan, o);

  auto* suite = app.add_subcommand("suite", "run a named property suite");
  suite->add_option("name", in1)->required();
  int count = -1;
  suite->add_option("--count", count, "case count (default: suite-specific)");
  add_common(suite, o);

  CLI11_PARSE(app, argc, argv);
  o.cap = env_cap(o.cap);
  auto t0 = std::chrono::steady_clock::now();

  try {
    Report rep;
    if (*validate) {
      rep.command = "validate";
      rep.input_digests = {digest_file(in1)};
      Manifest m = load_manifest(in1);
      std::string kind = m.kind;
      bool ok = true;
      std::string witness = kind;
      try {
        if (kind == "groupoid") {
          groupoid_from_json(m.payload);
        } else if (kind == "semigroup") {
          InvSgp s = semigroup_from_json(m.payload);
          witness += ", n = " + std::to_string(s.n) +
                     ", idempotents = " + std::to_string(s.idem.size());
        } else if (kind == "measure") {
          measure_from_json(m.payload);
        } else if (kind == "algebra") {
          AlgebraFile a = algebra_from_json(m.payload);
          validate_cartan(a.alg, a.masa, a.state);
        } else if (kind == "cocycle" || kind == "element" || kind == "bisections") {
          if (validate_gpd.empty())
            throw Error("ParseError", kind + " files need --groupoid for validation");
          Gpd g = load_groupoid(validate_gpd);
          if (kind == "cocycle")
            cocycle_from_json(m.payload, g);
          else if (kind == "element")
            element_from_json(m.payload, g);
          else
            bisections_from_json(m.payload, g);
        } else if (kind == "action") {
          if (validate_gpd.empty() || validate_target.empty())
            throw Error("ParseError", "action files need --groupoid and --target");
          action_from_json(m.payload, load_groupoid(validate_gpd),
                           load_groupoid(validate_target));
        } else {
          throw Error("ParseError", "unknown kind '" + kind + "'");
        }
      } catch (const Error& e) {
        ok = false;
        witness = e.what();
      }
      rep.add("validate." + kind, "input-wellformedness", ok, witness);
      time_report(rep, t0);
      return emit(rep, o);
    }
    if (*bis) {
      rep.command = "bis";
      rep.input_digests = {digest_file(in1)};
      Gpd g = load_groupoid(in1);
      BisSemigroup b = bis_semigroup(g, o.cap);
      BooleanCert cert = is_boolean(b.sgp);
      rep.add("bis.count", "ample-semigroup-count", true, std::to_string(b.sgp.n) + " elements");
      rep.add("bis.boolean", "ample-semigroup-boolean", cert.boolean, cert.reason);
      if (!o.out.empty()) save_text(o.out, serialize(semigroup_to_json(b.sgp)));
      time_report(rep, t0);
      std::cout << rep.to_text();
      return rep.all_pass() ? 0 : 1;
    }
    if (*germ) {
      rep.command = "germ";
      rep.input_digests = {digest_file(in1)};
      Manifest m = load_manifest(in1);
      InvSgp s = semigroup_from_json(m.payload);
      BooleanCert cert = is_boolean(s);
      rep.add("germ.boolean", "boolean-inverse-semigroup", cert.boolean, cert.reason);
      if (cert.boolean) {
        GermGpd gg = germ_groupoid(s, cert);
        rep.add("germ.arrows", "germ-groupoid", true,
                std::to_string(gg.gpd.n_arrows()) + " arrows over " +
                    std::to_string(gg.gpd.n_units()) + " units");
        if (!o.out.empty()) save_text(o.out, serialize(groupoid_to_json(gg.gpd)));
      }
      time_report(rep, t0);
      std::cout << rep.to_text();
      return rep.all_pass() ? 0 : 1;
    }
    if (*roundtrip) {
      rep.command = "roundtrip";
      rep.input_digests = {digest_file(in1)};
      Gpd g = load_groupoid(in1);
      GpdRoundtrip rt = roundtrip_gpd(g, o.cap);
      rep.add("roundtrip.gpd", "stone-equivalence", true,
              "Germ(Bis(G)) = G on " + std::to_string(g.n_arrows()) + " arrows");
      BooleanCert cert = is_boolean(rt.bis.sgp);
      IsgRoundtrip ir = roundtrip_isg(rt.bis.sgp, cert, 400, o.seed);
      rep.add("roundtrip.isg", "stone-equivalence", ir.bijective,
              "s -> S(s) bijective on " + std::to_string(rt.bis.sgp.n) + " elements");
      time_report(rep, t0);
      return emit(rep, o);
    }
    if (*props) {
      rep.command = "props";
      rep.input_digests = {digest_file(in1)};
      Gpd g = load_groupoid(in1);
      rep.add("props.effective", "structural-predicates", true,
              is_effective(g) ? "effective=true" : "effective=false");
      rep.add("props.principal", "structural-predicates", true,
              is_principal(g) ? "principal=true" : "principal=false");
      rep.add("props.group-bundle", "structural-predicates", true,
              is_group_bundle(g) ? "group_bundle=true" : "group_bundle=false");
      BisSemigroup b = bis_semigroup(g, o.cap);
      bool fund = is_fundamental(b.sgp);
      rep.add("props.fundamental-matches-effective", "effective-iff-fundamental",
              fund == is_effective(g), fund ? "fundamental=true" : "fundamental=false");
      time_report(rep, t0);
      return emit(rep, o);
    }
    if (*twistgerm) {
      rep.command = "twist-germ";
      rep.input_digests = {digest_file(in1), digest_file(in2)};
      Gpd g = load_groupoid(in1);
      Cocycle sigma = load_cocycle(in2, g);
      TwistedGpd ext = twisted_extension(g, sigma);
      TwistedIsg s = bis_of_twisted(ext, o.cap);
      TwistedGermResult tg = twisted_germ(s);
      GpdIso iso = singleton_iso(tg.germ, s.bis, g);
      Cocycle transported = transport_cocycle(tg.extracted, iso, g);
      auto cert = coboundary_test(g, transported, sigma);
      rep.add("twist-germ.base", "twisted-stone-equivalence", true, "base recovered");
      rep.add("twist-germ.cocycle-class", "twisted-stone-equivalence", cert.has_value(),
              cert ? "classes match" : "classes differ");
      rep.add("twist-germ.kernel", "twisted-stone-equivalence",
              tg.kernel_size == sigma.m * g.n_units(),
              std::to_string(tg.kernel_size) + " kernel classes");
      time_report(rep, t0);
      return emit(rep, o);
    }
    if (*convolve_cmd) {
      rep.command = "convolve";
      rep.input_digests = {digest_file(in1), digest_file(in2), digest_file(in3)};
      Gpd g = load_groupoid(in1);
      Manifest mf = load_manifest(in2), mg = load_manifest(in3);
      AlgElem f = element_from_json(mf.payload, g);
      AlgElem h = element_from_json(mg.payload, g);
      ConvCtx ctx = cocycle_path.empty() ? ConvCtx::untwisted(g, f.m)
                                         : ConvCtx::twisted(g, load_cocycle(cocycle_path, g));
      // global modulus: lcm of all declared phase denominators
      int total_m = static_cast<int>(std::lcm(std::lcm((long long)f.m, (long long)h.m),
                                              (long long)ctx.m));
      ctx = lift_ctx(ctx, total_m);
      f = embed_elem(f, total_m);
      h = embed_elem(h, total_m);
      AlgElem prod = convolve(ctx, f, h);
      rep.add("convolve.product", "convolution-algebra", true,
              std::to_string(prod.c.size()) + " coefficients");
      AlgElem lhs = star(ctx, prod);
      AlgElem rhs = convolve(ctx, star(ctx, h), star(ctx, f));
      rep.add("convolve.star-anti", "convolution-algebra", lhs == rhs, "(fg)* = g* f*");
      if (!o.out.empty()) save_text(o.out, serialize(element_to_json(prod)));
      time_report(rep, t0);
      std::cout << rep.to_text();
      return rep.all_pass() ? 0 : 1;
    }
    if (*wstar) {
      rep.command = "wstar";
      rep.input_digests = {digest_file(in1)};
      Gpd g = load_groupoid(in1);
      ConvCtx ctx = wstar_cocycle.empty() ? ConvCtx::untwisted(g, 1)
                                          : ConvCtx::twisted(g, load_cocycle(wstar_cocycle, g));
      Measure mu = wstar_measure.empty() ? Measure::uniform(g) : load_measure(wstar_measure);
      size_t span_cap = wstar->count("--cap") ? o.cap : 10000;
      WStar w = wstar_algebra(ctx, mu, static_cast<int>(span_cap));
      auto center = algebra_center(ctx);
      bool masa = diagonal_is_masa(ctx);
      rep.add("wstar.dim", "regular-representation-span", true,
              "dim = " + std::to_string(w.dim()));
      rep.add("wstar.center", "regular-representation-span", true,
              "center dim = " + std::to_string(center.size()));
      rep.add("wstar.diagonal-masa", "principal-iff-diagonal-masa",
              masa == is_principal(g),
              masa ? "diagonal is masa" : "diagonal is not masa");
      time_report(rep, t0);
      return emit(rep, o);
    }
    if (*refine) {
      rep.command = "refine";
      rep.input_digests = {digest_file(in1), digest_file(in2)};
      Gpd g = load_groupoid(in1);
      Manifest m = load_manifest(in2);
      auto family = bisections_from_json(m.payload, g);
      Refinement r = atoms_refinement(g, family);
      rep.add("refine.parts", "bisection-family-refinement", true,
              std::to_string(r.parts.size()) + " disjoint parts");
      if (!o.out.empty()) save_text(o.out, serialize(bisections_to_json(r.parts)));
      time_report(rep, t0);
      std::cout << rep.to_text();
      return rep.all_pass() ? 0 : 1;
    }
    if (*repround) {
      rep.command = "rep-roundtrip";
      rep.input_digests = {digest_file(in1)};
      Gpd g = load_groupoid(in1);
      ConvCtx ctx = rep_cocycle.empty() ? ConvCtx::untwisted(g, 1)
                                        : ConvCtx::twisted(g, load_cocycle(rep_cocycle, g));
      Measure mu = rep_measure.empty() ? Measure::uniform(g) : load_measure(rep_measure);
      IsgRep reg = reg_isg_rep(ctx, mu);
      bool ok = true;
      for (int gamma = 0; gamma < g.n_arrows(); ++gamma) {
        IsgRep rebuilt = isg_rep_from_rep(ctx, reg.arrow_mat);
        if (!(rep_of_elem(rebuilt, delta_arrow(ctx, gamma)) ==
              reg_matrix(ctx, delta_arrow(ctx, gamma))))
          ok = false;
      }
      rep.add("rep-roundtrip.deltas", "semigroup-algebra-rep-bijection", ok,
              "rebuilt rep equals Reg on all deltas");
      time_report(rep, t0);
      return emit(rep, o);
    }
    if (*cartan) {
      rep.command = "cartan";
      rep.input_digests = {digest_file(in1)};
      Manifest m = load_manifest(in1);
      AlgebraFile a = algebra_from_json(m.payload);
      CartanCertificate cert;
      try {
        cert = cartan_pipeline(a.alg, a.masa, a.state);
      } catch (const Error& e) {
        // a rejected pair (NotMasa / NotRegular) is a failed check, not an
        // unreadable input
        rep.add("cartan.validation", "cartan-reconstruction", false, e.code());
        time_report(rep, t0);
        return emit(rep, o);
      }
      rep.add("cartan.validation", "cartan-reconstruction", cert.validation.ok, "");
      rep.add("cartan.h-boolean", "cartan-reconstruction", cert.h_boolean,
              std::to_string(cert.rec.weyl.pin.h.n) + " classes");
      rep.add("cartan.weyl-principal", "weyl-groupoid-principal", cert.weyl_principal,
              std::to_string(cert.rec.weyl.germ.gpd.n_arrows()) + " arrows");
      rep.add("cartan.cocycle-trivial", "weyl-cocycle-class", cert.cocycle_trivial, "");
      rep.add("cartan.iso", "cartan-reconstruction",
              cert.rec.multiplicative && cert.rec.star_compatible && cert.rec.bijective,
              "Phi is a *-isomorphism");
      rep.add("cartan.diagonal", "cartan-reconstruction", cert.rec.diagonal_onto_diagonal,
              "Phi(B) is the diagonal");
      rep.add("cartan.states", "cartan-reconstruction", cert.rec.states_match,
              "m o P = mu o Q o Phi");
      rep.add("cartan.masa-downstairs", "principal-iff-diagonal-masa",
              cert.diagonal_masa_in_wstar, "");
      time_report(rep, t0);
      return emit(rep, o);
    }
    if (*suite) {
      int n = count > 0 ? count : suite_default_count(in1);
      rep = run_suite(in1, o.seed, n, o.cap);
      return emit(rep, o);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
