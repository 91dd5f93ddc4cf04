// ua: mechanisms, axiom checks and reproductions for the uniform domain.
// Exit codes: 0 ok, 1 property or claim false, 2 bad usage or input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ua/axioms.hpp"
#include "ua/errors.hpp"
#include "ua/io.hpp"
#include "ua/lottery.hpp"
#include "ua/mechanisms.hpp"
#include "ua/repro.hpp"
#include "ua/strategy.hpp"

namespace {

constexpr int kOk = 0, kFalse = 1, kUsage = 2;

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ua::InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void emit_certificate(const std::string& path, const nlohmann::json& doc) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw ua::InputError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

ua::Mechanism pick(const std::string& name) {
  if (name == "eps") return ua::eps_mechanism;
  if (name == "ps") return ua::ps_strict;
  if (name == "rp") return [](const ua::Profile& p) { return ua::rp_assign(p); };
  throw ua::InputError("unknown mechanism " + name);
}

struct Options {
  std::string mechanism = "eps", axiom, instance, matrix, certificate, domain = "uniform", target;
  bool pe = false, weak = false;
  std::size_t sweep_n = 0, n = 3;
};

int solve(const Options& o) {
  const auto inst = ua::parse_instance(slurp(o.instance));
  std::cout << ua::serialize_matrix(pick(o.mechanism)(inst.profile));
  return kOk;
}

int check(const Options& o) {
  const auto profile = ua::parse_profile(slurp(o.instance));
  const auto p = ua::parse_matrix(slurp(o.matrix));
  if (p.size() != profile.size()) throw ua::InputError("matrix and instance sizes differ");
  ua::AxiomVerdict v;
  if (o.axiom == "oe") {
    v = ua::ordinally_efficient(p, profile);
  } else if (o.axiom == "epe") {
    v = ua::ex_post_efficient(p, profile);
  } else if (o.axiom == "ef") {
    v = ua::envy_free(p, profile);
  } else if (o.axiom == "ete") {
    v = ua::equal_treatment(p, profile);
  } else {
    if (!p.is_deterministic()) throw ua::InputError("pe needs a 0/1 matrix");
    v = ua::pareto_efficient(p.to_matching(), profile);
  }
  std::cout << o.axiom << ": " << ua::describe(v) << "\n";
  emit_certificate(o.certificate, ua::to_json(v));
  return v.holds ? kOk : kFalse;
}

int decompose(const Options& o) {
  const auto profile = ua::parse_profile(slurp(o.instance));
  const auto p = ua::parse_matrix(slurp(o.matrix));
  if (p.size() != profile.size()) throw ua::InputError("matrix and instance sizes differ");
  if (!o.pe) {
    std::cout << ua::to_json(ua::bvn_decompose(p)).dump(2) << "\n";
    return kOk;
  }
  const auto d = ua::pe_decompose(p, profile);
  if (const auto* l = std::get_if<ua::Lottery>(&d)) {
    std::cout << ua::to_json(*l).dump(2) << "\n";
    return kOk;
  }
  const auto& inf = std::get<ua::HullInfeasibility>(d);
  std::cout << "not a lottery over Pareto-efficient matchings (" << inf.support.size() << " in support)\n";
  emit_certificate(o.certificate, ua::farkas_json(inf.system, inf.certificate));
  return kFalse;
}

int manipulate(const Options& o) {
  const auto mech = pick(o.mechanism);
  ua::ReportFilter domain;
  if (o.domain == "deadline") domain = ua::in_deadline_subdomain;
  if (o.sweep_n > 0) {
    const auto s = ua::sweep(mech, o.sweep_n, domain);
    const auto doc = ua::to_json(s);
    std::cout << doc.dump(2) << "\n";
    emit_certificate(o.certificate, doc);
    return (o.weak ? s.weak_sp_violations : s.sp_violations) == 0 ? kOk : kFalse;
  }
  if (o.instance.empty()) throw ua::InputError("manipulate needs an instance or --sweep n");
  const auto profile = ua::parse_profile(slurp(o.instance));
  const auto reports = o.weak ? ua::check_weak_sp(mech, profile, domain) : ua::check_sp(mech, profile, domain);
  auto doc = nlohmann::json::array();
  for (const auto& r : reports) doc.push_back(ua::to_json(r));
  std::cout << reports.size() << (o.weak ? " weak-SP" : " SP") << " violation(s)\n";
  if (!reports.empty()) std::cout << doc.dump(2) << "\n";
  emit_certificate(o.certificate, doc);
  return reports.empty() ? kOk : kFalse;
}

int repro(const Options& o) {
  try {
    if (o.target == "example31") {
      const auto r = ua::verify_example31();
      std::cout << r.transcript;
      emit_certificate(o.certificate, ua::to_json(r));
      return ua::claims_hold(r) ? kOk : kFalse;
    }
    if (o.target == "thm1") {
      const auto r = ua::verify_theorem1(o.n);
      std::cout << r.transcript;
      emit_certificate(o.certificate, ua::to_json(r));
      return ua::claims_hold(r) ? kOk : kFalse;
    }
    const auto r = ua::verify_theorem2();
    std::cout << r.transcript;
    emit_certificate(o.certificate, ua::to_json(r));
    return kOk;
  } catch (const ua::CertificationError& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return kFalse;
  }
}

int jobs2profile(const Options& o) {
  std::cout << ua::serialize_profile(ua::jobs_to_profile(ua::parse_jobs(slurp(o.instance))));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random assignment under uniform preferences"};
  app.require_subcommand(1);
  Options o;
  const auto mechs = CLI::IsMember({"eps", "ps", "rp"});

  auto* s = app.add_subcommand("solve", "Run a mechanism on an instance and print the matrix");
  s->add_option("--mechanism,-m", o.mechanism, "eps, ps or rp")->check(mechs);
  s->add_option("instance", o.instance, "instance JSON ('-' for stdin)")->required();

  auto* c = app.add_subcommand("check", "Check an axiom; exit 1 when it fails");
  c->add_option("--axiom,-a", o.axiom)->required()->check(CLI::IsMember({"oe", "epe", "ef", "ete", "pe"}));
  c->add_option("instance", o.instance)->required();
  c->add_option("matrix", o.matrix)->required();
  c->add_option("--certificate", o.certificate, "write the certificate JSON here ('-' for stdout)");

  auto* d = app.add_subcommand("decompose", "BvN lottery, or one over Pareto-efficient matchings with --pe");
  d->add_flag("--pe", o.pe);
  d->add_option("instance", o.instance)->required();
  d->add_option("matrix", o.matrix)->required();
  d->add_option("--certificate", o.certificate, "Farkas certificate when --pe fails");

  auto* m = app.add_subcommand("manipulate", "Search for profitable misreports");
  m->add_option("--mechanism,-m", o.mechanism)->check(mechs);
  m->add_option("--sweep", o.sweep_n, "sweep every profile with n agents")->check(CLI::PositiveNumber);
  m->add_option("--domain", o.domain, "uniform or deadline")->check(CLI::IsMember({"uniform", "deadline"}));
  m->add_flag("--weak", o.weak, "only misreports that strictly dominate truth");
  m->add_option("instance", o.instance);
  m->add_option("--certificate", o.certificate);

  auto* r = app.add_subcommand("repro", "Reproduce a worked example or theorem");
  r->add_option("target", o.target)->required()->check(CLI::IsMember({"example31", "thm1", "thm2"}));
  r->add_option("--n", o.n, "theorem 1 padding size")->check(CLI::Range(3, 64));
  r->add_option("--certificate", o.certificate);

  auto* j = app.add_subcommand("jobs2profile", "Map a deadline instance to a profile");
  j->add_option("jobs", o.instance)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (s->parsed()) return solve(o);
    if (c->parsed()) return check(o);
    if (d->parsed()) return decompose(o);
    if (m->parsed()) return manipulate(o);
    if (r->parsed()) return repro(o);
    return jobs2profile(o);
  } catch (const ua::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ua::GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
