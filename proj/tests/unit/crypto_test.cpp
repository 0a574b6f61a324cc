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
#include <openssl/sha.h>

#include <set>

#include "akalab/crypto/derive.hpp"
#include "akalab/crypto/ecies.hpp"
#include "akalab/crypto/group.hpp"
#include "akalab/crypto/rng.hpp"

namespace akalab::crypto {
namespace {

// Generator of secp256r1, compressed.
constexpr std::string_view kP256G = "036b17d1f2e12c4247f8bce6e563a440f277037d812deb33a0f4a13945d898c296";
// Group order q.
constexpr std::string_view kP256Order = "ffffffff00000000ffffffffffffffffbce6faada7179e84f3b9cac2fc632551";

// Reference X9.63 KDF built directly on SHA-256: Hash(Z || counter || info).
std::array<std::uint8_t, 64> x963_oracle(ByteView z, std::string_view info) {
  std::array<std::uint8_t, 64> out{};
  for (std::uint32_t counter = 1; counter <= 2; ++counter) {
    Bytes msg(z.begin(), z.end());
    for (int i = 3; i >= 0; --i) msg.push_back(static_cast<std::uint8_t>(counter >> (8 * i)));
    msg.insert(msg.end(), info.begin(), info.end());
    SHA256(msg.data(), msg.size(), out.data() + 32 * (counter - 1));
  }
  return out;
}

TEST(Group, GeneratorKnownAnswer) {
  OpCounters ops;
  Bytes one(32, 0);
  one[31] = 1;
  auto g = mul_generator(Scalar::decode(CurveId::secp256r1, one), ops);
  EXPECT_EQ(to_hex(g.encoding()), kP256G);

  // (q-1)*g = -g: same x, opposite parity.
  Bytes qm1 = from_hex(kP256Order);
  qm1[31] -= 1;
  auto neg = mul_generator(Scalar::decode(CurveId::secp256r1, qm1), ops);
  EXPECT_EQ(to_hex(neg.encoding()).substr(2), kP256G.substr(2));
  EXPECT_EQ(neg.encoding()[0], 0x02);
  EXPECT_EQ(ops.scalar_mults, 2u);
}

TEST(Group, ScalarRangeChecks) {
  EXPECT_THROW(Scalar::decode(CurveId::secp256r1, Bytes(32, 0)), std::invalid_argument);
  EXPECT_THROW(Scalar::decode(CurveId::secp256r1, from_hex(kP256Order)), std::invalid_argument);
  // q reduces to zero.
  EXPECT_FALSE(Scalar::from_uniform_bytes(CurveId::secp256r1, from_hex(kP256Order)).has_value());
  Bytes q1 = from_hex(kP256Order);
  q1[31] += 1;
  auto s = Scalar::from_uniform_bytes(CurveId::secp256r1, q1);
  ASSERT_TRUE(s.has_value());
  Bytes one(32, 0);
  one[31] = 1;
  EXPECT_TRUE(std::equal(s->bytes().begin(), s->bytes().end(), one.begin()));
}

TEST(Group, RejectsIdentityAndGarbage) {
  EXPECT_THROW(GroupElement::decode(CurveId::secp256r1, Bytes(33, 0)), InvalidPoint);
  EXPECT_THROW(GroupElement::decode(CurveId::secp256r1, Bytes{0x00}), InvalidPoint);
  Bytes wrong_prefix = from_hex(kP256G);
  wrong_prefix[0] = 0x05;
  EXPECT_THROW(GroupElement::decode(CurveId::secp256r1, wrong_prefix), InvalidPoint);
  // x = 1 gives a non-residue on secp256r1.
  Bytes no_root(33, 0);
  no_root[0] = 0x02;
  no_root[32] = 0x01;
  EXPECT_THROW(GroupElement::decode(CurveId::secp256r1, no_root), InvalidPoint);
  EXPECT_THROW(GroupElement::decode(CurveId::curve25519, Bytes(32, 0)), InvalidPoint);
  EXPECT_THROW(GroupElement::decode(CurveId::secp256r1, Bytes(32, 1)), InvalidPoint);
}

TEST(Group, ScalarWipedOnMove) {
  auto rng = Rng::seeded(1, "scalar");
  Scalar a = Scalar::random(CurveId::secp256r1, rng);
  EXPECT_FALSE(a.wiped());
  Scalar b = std::move(a);
  EXPECT_TRUE(a.wiped());  // NOLINT(bugprone-use-after-move)
  EXPECT_FALSE(b.wiped());
  b.wipe();
  EXPECT_TRUE(b.wiped());
}

class EciesCurves : public ::testing::TestWithParam<CurveId> {};

TEST_P(EciesCurves, KeygenConsistency) {
  auto rng = Rng::seeded(7, "keygen");
  auto a = ecies_keygen(GetParam(), rng);
  auto b = ecies_keygen(GetParam(), rng);
  EXPECT_FALSE(std::equal(a.sk.bytes().begin(), a.sk.bytes().end(), b.sk.bytes().begin()));
  OpCounters ops;
  EXPECT_EQ(mul_generator(a.sk, ops), a.pk);
  EXPECT_NO_THROW(GroupElement::decode(GetParam(), a.pk.encoding()));
}

TEST_P(EciesCurves, KemRoundTripAndCounters) {
  auto rng = Rng::seeded(11, "kem");
  auto kp = ecies_keygen(GetParam(), rng);
  OpCounters enc_ops;
  auto e1 = ecies_encap(kp.pk, rng, enc_ops);
  EXPECT_EQ(enc_ops, (OpCounters{.hash_ops = 1, .scalar_mults = 2, .rng_draws = 1}));
  OpCounters dec_ops;
  auto ks = ecies_decap(kp.sk, e1.c0, dec_ops);
  EXPECT_EQ(dec_ops, (OpCounters{.hash_ops = 1, .scalar_mults = 1}));
  EXPECT_EQ(ks, e1.ks);

  auto e2 = ecies_encap(kp.pk, rng, enc_ops);
  EXPECT_NE(e1.c0, e2.c0);

  auto wrong = ecies_keygen(GetParam(), rng);
  auto bad = ecies_decap(wrong.sk, e1.c0, dec_ops);
  EXPECT_NE(bad, e1.ks);
}

INSTANTIATE_TEST_SUITE_P(BothCurves, EciesCurves, ::testing::Values(CurveId::secp256r1, CurveId::curve25519));

TEST(Ecies, KdfMatchesX963Oracle) {
  auto rng = Rng::seeded(3, "x963");
  auto kp = ecies_keygen(CurveId::secp256r1, rng);
  OpCounters ops;
  auto enc = ecies_encap(kp.pk, rng, ops);
  // Independent route: recompute the ECDH x-coordinate and run the reference KDF.
  Block32 z = mul_point_x(enc.ephemeral, kp.pk, ops);
  auto okm = x963_oracle(z, "akalab-ecies-kdf");
  EXPECT_TRUE(std::equal(okm.begin(), okm.begin() + 32, enc.ks.s1.begin()));
  EXPECT_TRUE(std::equal(okm.begin() + 32, okm.end(), enc.ks.s2.begin()));
}

TEST(Ecies, DemRoundTripTamperAndCounters) {
  auto rng = Rng::seeded(5, "dem");
  auto kp = ecies_keygen(CurveId::secp256r1, rng);
  OpCounters ops;
  auto enc = ecies_encap(kp.pk, rng, ops);
  const Bytes m = concat({as_bytes("imsi-001010000000001"), Bytes(32, 0xab)});

  OpCounters senc_ops;
  auto sealed = ecies_senc(enc.ks, m, senc_ops);
  EXPECT_EQ(senc_ops, (OpCounters{.hash_ops = 1, .sym_encs = 1}));
  EXPECT_EQ(sealed.c1.size(), m.size());

  OpCounters ok_ops;
  auto plain = ecies_sdec(enc.ks, sealed.c1, sealed.mac, ok_ops);
  ASSERT_TRUE(plain.has_value());
  EXPECT_EQ(*plain, m);
  EXPECT_EQ(ok_ops, (OpCounters{.hash_ops = 1, .sym_decs = 1}));

  OpCounters fail_ops;
  EXPECT_FALSE(ecies_sdec(enc.ks, sealed.c1, ByteView(sealed.mac).first(31), fail_ops).has_value());
  EXPECT_EQ(fail_ops, (OpCounters{.hash_ops = 1}));

  EXPECT_THROW(ecies_senc(enc.ks, Bytes{}, ops), std::invalid_argument);
}

TEST(Ecies, DemAuthenticityUnderRandomBitFlips) {
  auto rng = Rng::seeded(99, "dem-prop");
  auto kp = ecies_keygen(CurveId::secp256r1, rng);
  OpCounters ops;
  int rejected = 0;
  constexpr int kCases = 1000;
  for (int i = 0; i < kCases; ++i) {
    auto enc = ecies_encap(kp.pk, rng, ops);
    Bytes m(1 + rng.uniform(96));
    rng.fill(m);
    auto sealed = ecies_senc(enc.ks, m, ops);
    auto roundtrip = ecies_sdec(enc.ks, sealed.c1, sealed.mac, ops);
    ASSERT_TRUE(roundtrip && *roundtrip == m);

    const std::size_t total_bits = 8 * (sealed.c1.size() + sealed.mac.size());
    const std::size_t bit = rng.uniform(total_bits);
    Bytes c1 = sealed.c1;
    Tag mac = sealed.mac;
    if (bit < 8 * c1.size()) {
      c1[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    } else {
      const std::size_t b = bit - 8 * c1.size();
      mac[b / 8] ^= static_cast<std::uint8_t>(1u << (b % 8));
    }
    if (!ecies_sdec(enc.ks, c1, mac, ops)) ++rejected;
  }
  EXPECT_EQ(rejected, kCases);
}

TEST(Dh, SymmetryAndCounters) {
  auto rng = Rng::seeded(21, "dh");
  for (int i = 0; i < 1000; ++i) {
    Scalar a = Scalar::random(CurveId::secp256r1, rng);
    Scalar b = Scalar::random(CurveId::secp256r1, rng);
    OpCounters ops;
    auto pa = dh_pub(a, ops);
    auto pb = dh_pub(b, ops);
    auto ab = dh_shared(a, pb, ops);
    auto ba = dh_shared(b, pa, ops);
    ASSERT_EQ(ab, ba);
    ASSERT_EQ(ops.scalar_mults, 4u);
    ASSERT_EQ(ops.total(), 4u);
  }
}

TEST(Derive, FamilyDeterminismLengthsAndCounting) {
  const Bytes k(32, 0x42);
  const Bytes x{'i', 'n', 'p', 'u', 't'};
  OpCounters ops;
  EXPECT_EQ(f(FTag::f2, k, {x}, ops), f(FTag::f2, k, {x}, ops));
  EXPECT_EQ(ops.hash_ops, 2u);
  EXPECT_EQ(f(FTag::f5, k, {x}, ops).size(), 6u);
  EXPECT_EQ(f(FTag::f5_star, k, {x}, ops).size(), 6u);
  EXPECT_EQ(f(FTag::f1_star, k, {x}, ops).size(), 32u);
  EXPECT_EQ(ops.hash_ops, 5u);
  EXPECT_EQ(ops.total(), 5u);
}

TEST(Derive, DomainSeparationAcrossTags) {
  auto rng = Rng::seeded(13, "domain");
  constexpr FTag kTags[] = {FTag::f1, FTag::f2, FTag::f3, FTag::f4, FTag::f5, FTag::f1_star, FTag::f5_star};
  OpCounters ops;
  for (int trial = 0; trial < 1000; ++trial) {
    auto key = rng.bytes<32>();
    Bytes input(1 + rng.uniform(64));
    rng.fill(input);
    std::set<Bytes> prefixes;
    for (auto tag : kTags) {
      auto out = f(tag, key, {input}, ops);
      // Compare on the common 6-byte prefix so short and long outputs are comparable.
      prefixes.insert(Bytes(out.begin(), out.begin() + 6));
    }
    ASSERT_EQ(prefixes.size(), std::size(kTags));
  }
}

TEST(Derive, FieldFramingIsUnambiguous) {
  OpCounters ops;
  EXPECT_NE(hash_fields("l", {as_bytes("ab"), as_bytes("c")}, ops),
            hash_fields("l", {as_bytes("a"), as_bytes("bc")}, ops));
  EXPECT_EQ(encode_fields("L", {as_bytes("xy")}), (Bytes{'L', 0, 2, 'x', 'y'}));
}

TEST(Derive, AnchorKdfSensitivity) {
  OpCounters ops;
  const Bytes ckik(64, 1);
  const Bytes r(32, 2);
  auto a = kdf_anchor({ckik, r, as_bytes("sn-a")}, ops);
  auto b = kdf_anchor({ckik, r, as_bytes("sn-b")}, ops);
  EXPECT_NE(a, b);
  EXPECT_EQ(a, kdf_anchor({ckik, r, as_bytes("sn-a")}, ops));
  EXPECT_EQ(ops.hash_ops, 3u);
}

TEST(Derive, XorCountsOnce) {
  OpCounters ops;
  auto z = xor_bytes(Bytes{1, 2, 3}, Bytes{1, 2, 3}, ops);
  EXPECT_EQ(z, (Bytes{0, 0, 0}));
  EXPECT_EQ(ops, (OpCounters{.xors = 1}));
  EXPECT_THROW(xor_bytes(Bytes{1}, Bytes{1, 2}, ops), std::invalid_argument);
}

TEST(Rng, SeededStreamsAreReproducibleAndDistinct) {
  auto a = Rng::seeded(1, "ue");
  auto b = Rng::seeded(1, "ue");
  auto c = Rng::seeded(1, "hn");
  auto d = Rng::seeded(1, "ue", 1);
  auto x = a.bytes<32>();
  EXPECT_EQ(x, b.bytes<32>());
  EXPECT_NE(x, c.bytes<32>());
  EXPECT_NE(x, d.bytes<32>());
}

TEST(Curve, Parse) {
  EXPECT_EQ(parse_curve("secp256r1"), CurveId::secp256r1);
  EXPECT_EQ(parse_curve("curve25519"), CurveId::curve25519);
  EXPECT_THROW(parse_curve("secp384r1"), std::invalid_argument);
  EXPECT_THROW(point_length(static_cast<CurveId>(9)), UnsupportedCurve);
  auto rng = Rng::seeded(1, "c");
  EXPECT_THROW(ecies_keygen(static_cast<CurveId>(9), rng), UnsupportedCurve);
}

}  // namespace
}  // namespace akalab::crypto
