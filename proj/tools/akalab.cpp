// Copyright 2026 The akalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// akalab: daemons, UE client, bench and simulator front end.

#include <signal.h>

#include <cstdio>
#include <fstream>
#include <iostream>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "akalab/bench/bench.hpp"
#include "akalab/netlab/simulator.hpp"
#include "akalab/service/daemons.hpp"

namespace {

using namespace akalab;
using service::Endpoint;
using service::EndpointConfig;

constexpr int kUsage = 1;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw service::ConfigError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

sigset_t stop_signals() {
  sigset_t s;
  sigemptyset(&s);
  sigaddset(&s, SIGINT);
  sigaddset(&s, SIGTERM);
  return s;
}

void write_ready(const std::string& path, const Endpoint& ep) {
  if (!path.empty()) service::write_file_atomic(path, ep.str() + "\n");
}

// Must run before the daemon starts any thread.
void block_stop_signals() {
  const sigset_t set = stop_signals();
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
}

int wait_for_stop(service::Server& s) {
  const sigset_t set = stop_signals();
  int sig = 0;
  sigwait(&set, &sig);
  spdlog::info("signal {}, stopping after {} sessions", sig, s.sessions());
  s.stop();
  return 0;
}

struct DaemonFlags {
  std::string config, listen, hn, ready_file, capture;
  std::optional<std::uint64_t> seed;
};

void common_daemon_flags(CLI::App* cmd, DaemonFlags& f) {
  cmd->add_option("--config", f.config, "endpoint config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--listen", f.listen, "override listen address, addr:port");
  cmd->add_option("--seed", f.seed, "deterministic test mode");
  cmd->add_option("--ready-file", f.ready_file, "write the bound address here once listening");
}

EndpointConfig load_with_overrides(const DaemonFlags& f) {
  EndpointConfig c = service::load_config(f.config);
  if (!f.listen.empty()) c.listen = service::parse_endpoint(f.listen);
  if (!f.hn.empty()) c.hn = service::parse_endpoint(f.hn);
  c.validate();
  return c;
}

int run_hn(const DaemonFlags& f) {
  const EndpointConfig c = load_with_overrides(f);
  if (c.role != service::Role::hn) throw service::ConfigError("config: role must be hn");
  block_stop_signals();
  service::HnDaemon d(c, service::load_hn_materials(c), f.seed);
  d.start();
  write_ready(f.ready_file, d.endpoint());
  return wait_for_stop(d);
}

int run_sn(const DaemonFlags& f) {
  const EndpointConfig c = load_with_overrides(f);
  if (c.role != service::Role::sn) throw service::ConfigError("config: role must be sn");
  block_stop_signals();
  std::optional<service::fs::path> capture;
  if (!f.capture.empty()) capture = f.capture;
  service::SnDaemon d(c, service::load_psk(c.psk), f.seed, capture);
  d.start();
  write_ready(f.ready_file, d.endpoint());
  return wait_for_stop(d);
}

struct UeFlags {
  std::string config, protocol, sn, supi;
  std::optional<std::uint64_t> seed;
  int retries = 0;
  std::optional<int> timeout_ms;
};

int run_ue(const UeFlags& f) {
  EndpointConfig c = service::load_config(f.config);
  if (!f.protocol.empty()) c.protocol = wire::parse_protocol(f.protocol);
  if (!f.sn.empty()) c.sn = service::parse_endpoint(f.sn);
  if (f.timeout_ms) c.timeout = std::chrono::milliseconds(*f.timeout_ms);
  service::UeRunOptions o;
  o.supi = f.supi;
  o.seed = f.seed;
  o.retries = f.retries;
  const service::UeReport r = service::run_ue_client(c, o);
  std::cout << r.render() << std::flush;
  return r.exit_code();
}

struct BenchFlags {
  std::string protocol = "all";
  std::vector<std::string> cases;
  std::size_t trials = 100;
  std::size_t timing_samples = 200;
  std::uint64_t seed = 1;
  std::string out;
};

std::vector<wire::ProtocolId> protocols_of(const std::string& s) {
  if (s == "all") return {wire::ProtocolId::baseline, wire::ProtocolId::p1, wire::ProtocolId::p2};
  return {wire::parse_protocol(s)};
}

int run_bench(const BenchFlags& f) {
  const auto protocols = protocols_of(f.protocol);
  std::vector<bench::Case> cases;
  for (const auto& c : f.cases) cases.push_back(bench::parse_case(c));
  if (cases.empty()) cases = {bench::Case::c1, bench::Case::c2, bench::Case::c3};

  std::vector<bench::CostReport> costs;
  for (auto p : protocols) {
    for (auto c : cases) {
      if (!bench::published_budget(p, c)) continue;
      costs.push_back(bench::audit_counts(p, c, f.trials, f.seed));
    }
  }
  std::vector<bench::MessageAudit> messages;
  for (auto p : protocols) {
    messages.push_back(bench::audit_messages(p, bench::Scenario::happy, f.seed));
    if (p == wire::ProtocolId::baseline) messages.push_back(bench::audit_messages(p, bench::Scenario::resync, f.seed));
  }
  std::optional<bench::TimingReport> timing;
  if (f.timing_samples > 0) timing = bench::timing_compare(protocols, f.timing_samples, f.seed);

  const std::string report = bench::render(costs, messages, timing ? &*timing : nullptr);
  std::cout << report;
  if (!f.out.empty()) service::write_file_atomic(f.out, report);

  bool ok = timing ? timing->pass() : true;
  for (const auto& c : costs) ok = ok && c.pass();
  for (const auto& m : messages) ok = ok && m.pass();
  return ok ? 0 : 2;
}

struct SimFlags {
  std::string protocol = "p1";
  std::string script;
  std::string export_path;
  std::uint64_t seed = 1;
  std::size_t sessions = 1;
  std::size_t subscriber = 0;
};

int run_sim(const SimFlags& f) {
  netlab::Lab lab(f.seed, std::max<std::size_t>(2, f.subscriber + 1));
  std::optional<netlab::Adversary> adv;
  if (!f.script.empty()) adv.emplace(slurp(f.script));
  const auto p = wire::parse_protocol(f.protocol);
  Bytes exported;
  int rc = 0;
  for (std::size_t i = 0; i < f.sessions; ++i) {
    const netlab::Transcript t = lab.run(p, f.subscriber, adv ? &*adv : nullptr);
    std::cout << "# session " << i << "\n" << t.render();
    const Bytes frames = t.export_frames();
    exported.insert(exported.end(), frames.begin(), frames.end());
    if (t.ue.outcome != aka::Outcome::complete) rc = 2;
  }
  if (!f.export_path.empty()) {
    service::write_file_atomic(f.export_path, std::string(exported.begin(), exported.end()));
  }
  return rc;
}

struct KeygenFlags {
  std::string dir;
  std::size_t subscribers = 2;
  std::string hn_listen = "127.0.0.1:7101";
  std::string sn_listen = "127.0.0.1:7102";
  std::optional<std::uint64_t> seed;
};

int run_keygen(const KeygenFlags& f) {
  const auto layout = service::write_lab(f.dir, f.subscribers, service::parse_endpoint(f.hn_listen),
                                         service::parse_endpoint(f.sn_listen), f.seed);
  std::cout << "wrote " << layout.dir.string() << " with " << layout.subscribers.size() << " subscribers\n";
  for (const auto& s : layout.subscribers) std::cout << "  " << s.supi << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  akalab::service::init_logging();

  CLI::App app{"akalab: authentication and key agreement lab"};
  app.require_subcommand(1);

  DaemonFlags hn_flags;
  auto* hn = app.add_subcommand("hn-daemon", "home network daemon");
  common_daemon_flags(hn, hn_flags);

  DaemonFlags sn_flags;
  auto* sn = app.add_subcommand("sn-daemon", "serving network daemon");
  common_daemon_flags(sn, sn_flags);
  sn->add_option("--hn", sn_flags.hn, "override home network address, addr:port");
  sn->add_option("--capture", sn_flags.capture, "append every UE-facing frame to this file");

  UeFlags ue_flags;
  auto* ue = app.add_subcommand("ue-client", "run one authentication as a UE");
  ue->add_option("--config", ue_flags.config, "endpoint config (JSON)")->required()->check(CLI::ExistingFile);
  ue->add_option("--supi", ue_flags.supi, "subscriber identity")->required();
  ue->add_option("--protocol", ue_flags.protocol, "baseline, p1 or p2")
      ->check(CLI::IsMember({"baseline", "p1", "p2"}));
  ue->add_option("--sn", ue_flags.sn, "override serving network address, addr:port");
  ue->add_option("--seed", ue_flags.seed, "deterministic test mode");
  ue->add_option("--retries", ue_flags.retries, "retries after a transient failure")->check(CLI::NonNegativeNumber);
  ue->add_option("--timeout-ms", ue_flags.timeout_ms, "session timeout")->check(CLI::PositiveNumber);

  BenchFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "operation, message and timing audits");
  bench->add_option("--protocol", bench_flags.protocol, "baseline, p1, p2 or all")
      ->check(CLI::IsMember({"baseline", "p1", "p2", "all"}));
  bench->add_option("--case", bench_flags.cases, "1, 2 or 3; repeatable (default: all)")
      ->check(CLI::IsMember({"1", "2", "3"}));
  bench->add_option("--trials", bench_flags.trials, "sessions per budget cell")->check(CLI::PositiveNumber);
  bench->add_option("--timing-samples", bench_flags.timing_samples, "timing samples per protocol (0 skips)");
  bench->add_option("--seed", bench_flags.seed);
  bench->add_option("--out", bench_flags.out, "also write the report here");

  SimFlags sim_flags;
  auto* sim = app.add_subcommand("sim", "run sessions in the simulator and print transcripts");
  sim->add_option("--protocol", sim_flags.protocol, "baseline, p1 or p2")
      ->check(CLI::IsMember({"baseline", "p1", "p2"}));
  sim->add_option("--script", sim_flags.script, "adversary script")->check(CLI::ExistingFile);
  sim->add_option("--export", sim_flags.export_path, "write canonical frames here");
  sim->add_option("--seed", sim_flags.seed);
  sim->add_option("--sessions", sim_flags.sessions)->check(CLI::PositiveNumber);
  sim->add_option("--subscriber", sim_flags.subscriber, "UE index");

  KeygenFlags keygen_flags;
  auto* keygen = app.add_subcommand("keygen", "provision a lab directory");
  keygen->add_option("--dir", keygen_flags.dir)->required();
  keygen->add_option("--subscribers", keygen_flags.subscribers)->check(CLI::PositiveNumber);
  keygen->add_option("--hn-listen", keygen_flags.hn_listen);
  keygen->add_option("--sn-listen", keygen_flags.sn_listen);
  keygen->add_option("--seed", keygen_flags.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  try {
    if (*hn) return run_hn(hn_flags);
    if (*sn) return run_sn(sn_flags);
    if (*ue) return run_ue(ue_flags);
    if (*bench) return run_bench(bench_flags);
    if (*sim) return run_sim(sim_flags);
    if (*keygen) return run_keygen(keygen_flags);
  } catch (const akalab::netlab::ScriptError& e) {
    std::cerr << "akalab: script: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "akalab: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
