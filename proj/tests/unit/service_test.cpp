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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <future>
#include <random>
#include <set>

#include "akalab/crypto/derive.hpp"
#include "akalab/netlab/simulator.hpp"
#include "akalab/service/daemons.hpp"
#include "akalab/wire/codec.hpp"

namespace akalab::service {
namespace {

using namespace std::chrono_literals;

fs::path fresh_dir(const std::string& tag) {
  std::random_device rd;
  const fs::path p = fs::temp_directory_path() / ("akalab-" + tag + "-" + std::to_string(rd()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<wire::Frame> split_frames(const std::string& dump) {
  std::vector<wire::Frame> out;
  const ByteView all(reinterpret_cast<const std::uint8_t*>(dump.data()), dump.size());
  std::size_t off = 0;
  while (off < all.size()) {
    const std::size_t n = wire::frame_size_from_prefix(all.subspan(off));
    out.push_back(wire::decode(all.subspan(off, n)));
    off += n;
  }
  return out;
}

// HN and SN daemons on ephemeral ports over a freshly provisioned directory.
struct Deployment {
  fs::path dir;
  LabLayout layout;
  EndpointConfig hn_cfg, sn_cfg, ue_cfg;
  std::unique_ptr<HnDaemon> hn;
  std::unique_ptr<SnDaemon> sn;
  fs::path capture;

  explicit Deployment(const std::string& tag, std::size_t subs = 2, std::optional<std::uint64_t> seed = {}) {
    dir = fresh_dir(tag);
    layout = write_lab(dir, subs, {"127.0.0.1", 0}, {"127.0.0.1", 0}, seed);
    hn_cfg = load_config(dir / "hn.json");
    sn_cfg = load_config(dir / "sn.json");
    ue_cfg = load_config(dir / "ue.json");
    capture = dir / "ue-socket.bin";
    start_hn(seed);
    sn_cfg.hn = hn->endpoint();
    sn = std::make_unique<SnDaemon>(sn_cfg, load_psk(sn_cfg.psk), seed, capture);
    sn->start();
    ue_cfg.sn = sn->endpoint();
    ue_cfg.sn->host = "127.0.0.1";
  }
  void start_hn(std::optional<std::uint64_t> seed = {}) {
    hn = std::make_unique<HnDaemon>(hn_cfg, load_hn_materials(hn_cfg), seed);
    hn->start();
    hn_cfg.listen = hn->endpoint();
    hn_cfg.listen->host = "127.0.0.1";
  }
  ~Deployment() {
    sn.reset();
    hn.reset();
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  UeReport run(wire::ProtocolId p, std::size_t sub = 0, std::optional<std::uint64_t> seed = {}) {
    EndpointConfig c = ue_cfg;
    c.protocol = p;
    UeRunOptions o;
    o.supi = layout.subscribers.at(sub).supi;
    o.seed = seed;
    return run_ue_client(c, o);
  }
};

class KeyLog {
 public:
  KeyLog() : path_(fresh_dir("keylog") / "keys.txt") { ::setenv("AKALAB_KEYLOG", path_.c_str(), 1); }
  ~KeyLog() {
    ::unsetenv("AKALAB_KEYLOG");
    std::error_code ec;
    fs::remove_all(path_.parent_path(), ec);
  }
  // role -> keys in order.
  std::map<std::string, std::vector<Bytes>> read() const {
    std::map<std::string, std::vector<Bytes>> out;
    std::ifstream in(path_);
    std::string role, sid, key;
    while (in >> role >> sid >> key) out[role].push_back(from_hex(key));
    return out;
  }

 private:
  fs::path path_;
};

// ------------------------------------------------------------ provisioning and config

TEST(Provisioning, ParsesAndRejectsWithLineNumbers) {
  const std::string k(64, 'a');
  const auto ok = parse_provisioning("#akalab-subscribers v1\nalice," + k + "\n\n# note\nbob," + k + "\n");
  ASSERT_EQ(ok.size(), 2u);
  EXPECT_EQ(ok[1].supi, "bob");
  EXPECT_EQ(ok[0].k[0], 0xaa);

  struct Bad {
    std::string text;
    std::string needle;
  };
  const Bad bad[] = {
      {"alice," + k + "\n", "line 1"},
      {"#akalab-subscribers v1\nalice," + k + "\nalice," + k + "\n", "line 3: duplicate"},
      {"#akalab-subscribers v1\nalice,abc\n", "line 2"},
      {"#akalab-subscribers v1\nalice " + k + "\n", "line 2"},
      {"#akalab-subscribers v1\nalice," + std::string(63, 'a') + "g\n", "line 2"},
  };
  for (const auto& b : bad) {
    try {
      parse_provisioning(b.text);
      FAIL() << b.text;
    } catch (const ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find(b.needle), std::string::npos) << e.what();
    }
  }
  EXPECT_EQ(parse_provisioning(format_provisioning(ok)).size(), 2u);
}

TEST(Config, RolesRequireTheirFields) {
  EXPECT_THROW(parse_config(R"({"role":"hn","listen":"127.0.0.1:1"})", "/x").validate(), ConfigError);
  EXPECT_THROW(parse_config(R"({"role":"sn","listen":"127.0.0.1:1","psk":"p"})", "/x").validate(), ConfigError);
  EXPECT_THROW(parse_config(R"({"role":"ue","sn":"127.0.0.1:1","subscribers":"s"})", "/x").validate(), ConfigError);
  EXPECT_THROW(parse_config(R"({"role":"router"})", "/x"), ConfigError);
  EXPECT_THROW(parse_config(R"({"role":"ue","protocol":"p9"})", "/x"), ConfigError);
  EXPECT_THROW(parse_config(R"({"role":"ue","sn":"nohost"})", "/x"), ConfigError);
  EXPECT_THROW(parse_config("[1,2]", "/x"), ConfigError);

  const auto c = parse_config(R"({"role":"ue","sn":"127.0.0.1:7","pk_hn":"k/hn.pk","subscribers":"/abs/s",
                                  "protocol":"p2","timeout_ms":250})",
                              "/base");
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.pk_hn, fs::path("/base/k/hn.pk"));
  EXPECT_EQ(c.subscribers, fs::path("/abs/s"));
  EXPECT_EQ(c.protocol, wire::ProtocolId::p2);
  EXPECT_EQ(c.sn->port, 7);
  EXPECT_EQ(c.timeout, 250ms);
}

TEST(Config, DuplicateSupiRefusesStartup) {
  const fs::path dir = fresh_dir("dup");
  write_lab(dir, 2, {"127.0.0.1", 0}, {"127.0.0.1", 0}, 5);
  std::ofstream(dir / "subscribers.txt", std::ios::app) << "imsi-001010000000001," << std::string(64, '0') << "\n";
  const auto cfg = load_config(dir / "hn.json");
  EXPECT_THROW(load_hn_materials(cfg), ConfigError);
  fs::remove_all(dir);
}

TEST(Config, SqnStateRoundTrip) {
  const fs::path dir = fresh_dir("sqn");
  save_sqn_state(dir / "s", {{"a", 5}, {"b", aka::kSqnMax}});
  const auto back = load_sqn_state(dir / "s");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].second, aka::kSqnMax);
  EXPECT_TRUE(load_sqn_state(dir / "missing").empty());
  std::ofstream(dir / "bad") << "a,notanumber\n";
  EXPECT_THROW(load_sqn_state(dir / "bad"), ConfigError);
  fs::remove_all(dir);
}

// ------------------------------------------------------------ tunnel

TEST(Tunnel, RoundTripAndWrongKey) {
  Psk psk{};
  psk[0] = 7;
  Psk other = psk;
  other[31] = 1;
  for (const bool same : {true, false}) {
    Listener l({"127.0.0.1", 0});
    auto server = std::async(std::launch::async, [&]() -> std::string {
      auto s = l.accept(deadline_in(2s));
      if (!s) return "no connection";
      try {
        Tunnel t = Tunnel::server(std::move(*s), psk, deadline_in(2s));
        auto rec = t.recv(deadline_in(2s));
        t.send(*rec, deadline_in(2s));
        return "ok";
      } catch (const TunnelError& e) {
        return e.what();
      } catch (const NetError& e) {
        return e.what();
      }
    });
    try {
      Tunnel c = Tunnel::client(connect_to({"127.0.0.1", l.port()}, deadline_in(2s)), same ? psk : other,
                                deadline_in(2s));
      ASSERT_TRUE(same);
      const Bytes msg = {1, 2, 3, 4, 5};
      c.send(msg, deadline_in(2s));
      EXPECT_EQ(c.recv(deadline_in(2s)), msg);
    } catch (const NetError&) {
      EXPECT_FALSE(same);
    }
    const std::string server_result = server.get();
    if (same) {
      EXPECT_EQ(server_result, "ok");
    } else {
      EXPECT_NE(server_result, "ok");
    }
  }
}

TEST(Net, EndpointParsing) {
  EXPECT_EQ(parse_endpoint("127.0.0.1:80").port, 80);
  EXPECT_EQ(parse_endpoint("host:0").host, "host");
  EXPECT_THROW(parse_endpoint("host"), std::invalid_argument);
  EXPECT_THROW(parse_endpoint("host:70000"), std::invalid_argument);
  EXPECT_THROW(parse_endpoint("host:8x"), std::invalid_argument);
}

// ------------------------------------------------------------ end to end

class EndToEnd : public ::testing::TestWithParam<wire::ProtocolId> {};

TEST_P(EndToEnd, CompletesWithEqualKeysAndCleanUeSocket) {
  KeyLog keylog;
  Deployment d("e2e");
  const UeReport r = d.run(GetParam());
  ASSERT_EQ(r.exit_code(), 0) << r.render();
  const std::size_t expected = GetParam() == wire::ProtocolId::baseline ? 9 : 7;
  EXPECT_EQ(r.messages, expected);
  ASSERT_TRUE(r.fingerprint);
  d.sn.reset();
  d.hn.reset();

  const auto keys = keylog.read();
  ASSERT_EQ(keys.at("hn").size(), 1u);
  ASSERT_EQ(keys.at("sn").size(), 1u);
  EXPECT_EQ(keys.at("hn")[0], keys.at("sn")[0]);
  EXPECT_EQ(crypto::key_fingerprint(keys.at("hn")[0]), *r.fingerprint);

  const std::string dump = slurp(d.capture);
  const auto frames = split_frames(dump);
  // P1/P2: M1, M4, M5, completion notice. Baseline adds key confirmation.
  EXPECT_EQ(frames.size(), GetParam() == wire::ProtocolId::baseline ? 6u : 4u);
  for (const auto& f : frames) EXPECT_FALSE(wire::carries_anchor_key(f.msg));
  const std::string key(keys.at("hn")[0].begin(), keys.at("hn")[0].end());
  EXPECT_EQ(dump.find(key), std::string::npos);
}

TEST_P(EndToEnd, MatchesTheSimulatorFrameForFrame) {
  constexpr std::uint64_t kSeed = 4242;
  Deployment d("parity", 1, kSeed);
  const UeReport r = d.run(GetParam(), 0, kSeed);
  ASSERT_EQ(r.exit_code(), 0) << r.render();
  d.sn.reset();
  d.hn.reset();
  const auto live = split_frames(slurp(d.capture));

  // Same long-term material, fresh state, same seeds.
  aka::HnContext ctx{load_hn_keys(d.hn_cfg.sk_hn), {}, d.hn_cfg.id_hn};
  for (const auto& s : d.layout.subscribers) ctx.db.add(s.supi, s.k);
  aka::UeProfile ue{d.layout.subscribers[0].supi, d.layout.subscribers[0].k, load_hn_public(d.ue_cfg.pk_hn),
                    d.ue_cfg.id_hn, d.ue_cfg.id_sn, 0};
  netlab::RunConfig cfg;
  cfg.protocol = GetParam();
  cfg.seed = kSeed;
  const netlab::Transcript t = netlab::run_session(cfg, ue, ctx, aka::SnConfig{d.sn_cfg.id_sn, d.sn_cfg.id_hn});
  std::vector<wire::Frame> sim;
  for (const auto& e : t.events) {
    if (e.link == netlab::Link::open) sim.push_back(wire::decode(e.frame));
  }
  ASSERT_EQ(sim.size(), live.size());
  for (std::size_t i = 0; i < sim.size(); ++i) {
    EXPECT_EQ(sim[i].msg, live[i].msg) << "frame " << i << " " << wire::message_name(sim[i].msg);
  }
  EXPECT_EQ(crypto::key_fingerprint(*t.ue.kseaf), *r.fingerprint);
}

INSTANTIATE_TEST_SUITE_P(All, EndToEnd,
                         ::testing::Values(wire::ProtocolId::baseline, wire::ProtocolId::p1, wire::ProtocolId::p2),
                         [](const auto& info) { return std::string(wire::protocol_name(info.param)); });

TEST(Service, WrongKeyIsARemoteAbort) {
  Deployment d("wrongk");
  auto subs = d.layout.subscribers;
  subs[0].k[0] ^= 1;
  write_file_atomic(d.dir / "ue-subs.txt", format_provisioning(subs));
  d.ue_cfg.subscribers = d.dir / "ue-subs.txt";
  for (auto p : {wire::ProtocolId::p1, wire::ProtocolId::p2}) {
    const UeReport r = d.run(p);
    EXPECT_EQ(r.abort, AbortKind::remote) << r.render();
    EXPECT_EQ(r.exit_code(), 3);
    EXPECT_FALSE(r.fingerprint);
  }
}

TEST(Service, UnknownSupiIsAConfigError) {
  Deployment d("nosupi");
  UeRunOptions o;
  o.supi = "imsi-nobody";
  EXPECT_THROW(run_ue_client(d.ue_cfg, o), ConfigError);
}

TEST(Service, BaselineTwiceAdvancesHnSqnByTwo) {
  Deployment d("sqn");
  const auto& supi = d.layout.subscribers[0].supi;
  const std::uint64_t before = d.hn->context().db.sqn(supi);
  EXPECT_EQ(d.run(wire::ProtocolId::baseline).exit_code(), 0);
  EXPECT_EQ(d.run(wire::ProtocolId::baseline).exit_code(), 0);
  EXPECT_EQ(d.hn->context().db.sqn(supi), before + 2);
  d.sn.reset();
  d.hn.reset();
  // Persisted on both sides.
  for (const auto& [s, v] : load_sqn_state(d.hn_cfg.sqn_state)) {
    if (s == supi) {
      EXPECT_EQ(v, before + 2);
    }
  }
  const auto ue_state = load_sqn_state(d.ue_cfg.sqn_state);
  ASSERT_EQ(ue_state.size(), 1u);
  EXPECT_EQ(ue_state[0].second, before + 1);
}

TEST(Service, HnDownThenBack) {
  Deployment d("down");
  d.hn.reset();  // port stays recorded in hn_cfg
  const UeReport down = d.run(wire::ProtocolId::p1);
  EXPECT_EQ(down.abort, AbortKind::transient) << down.render();
  EXPECT_EQ(down.exit_code(), 4);

  d.start_hn();
  const UeReport up = d.run(wire::ProtocolId::p1);
  EXPECT_EQ(up.exit_code(), 0) << up.render();
}

TEST(Service, TimeoutWhenSnNeverAnswers) {
  Listener silent({"127.0.0.1", 0});
  Deployment d("timeout");
  EndpointConfig c = d.ue_cfg;
  c.sn = Endpoint{"127.0.0.1", silent.port()};
  c.timeout = 300ms;
  UeRunOptions o;
  o.supi = d.layout.subscribers[0].supi;
  const UeReport r = run_ue_client(c, o);
  EXPECT_EQ(r.abort, AbortKind::timeout) << r.render();
  EXPECT_EQ(r.exit_code(), 5);
}

TEST(Service, MalformedUeFrameGetsProtocolError) {
  Deployment d("malformed");
  Socket s = connect_to(*d.ue_cfg.sn, deadline_in(2s));
  Bytes junk = {0, 0, 0, 20, 1, 0x7f, 1};
  junk.resize(24, 0);
  s.write_all(junk, deadline_in(2s));
  const auto reply = recv_frame(s, deadline_in(2s));
  ASSERT_TRUE(reply);
  const auto f = wire::decode(*reply);
  ASSERT_TRUE(std::holds_alternative<wire::Notice>(f.msg));
  EXPECT_EQ(std::get<wire::Notice>(f.msg).code, wire::NoticeCode::protocol_error);
}

TEST(Service, ConcurrentClientsGetDistinctKeys) {
  Deployment d("soak", 4);
  std::vector<std::future<UeReport>> futs;
  for (int i = 0; i < 24; ++i) {
    futs.push_back(std::async(std::launch::async, [&, i] {
      return d.run(i % 2 ? wire::ProtocolId::p1 : wire::ProtocolId::p2, static_cast<std::size_t>(i % 4));
    }));
  }
  std::set<std::string> fps;
  for (auto& f : futs) {
    const UeReport r = f.get();
    ASSERT_EQ(r.exit_code(), 0) << r.render();
    fps.insert(*r.fingerprint);
  }
  EXPECT_EQ(fps.size(), 24u);
}

}  // namespace
}  // namespace akalab::service
