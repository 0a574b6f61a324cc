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

#include "akalab/crypto/rng.hpp"
#include "akalab/wire/codec.hpp"
#include "wire_gen.hpp"

namespace akalab::wire {
namespace {

using crypto::Rng;
using namespace gen;

class RoundTrip : public ::testing::TestWithParam<std::size_t> {};

TEST_P(RoundTrip, ThousandRandomCases) {
  auto rng = Rng::seeded(0x5eed, "wire-roundtrip", GetParam());
  for (int i = 0; i < 1000; ++i) {
    Frame f = rand_frame(GetParam(), rng);
    ASSERT_EQ(f.msg.index(), GetParam());
    Bytes a = encode(f);
    Bytes b = encode(f);
    ASSERT_EQ(a, b);
    ASSERT_EQ(decode(a), f) << "case " << i;
    ASSERT_EQ(frame_size_from_prefix(ByteView(a).first(4)), a.size());
  }
}

std::string kind_name(const ::testing::TestParamInfo<std::size_t>& info) {
  auto rng = Rng::seeded(0, "name");
  return std::string(message_name(rand_message(info.param, rng, ProtocolId::p1)));
}

INSTANTIATE_TEST_SUITE_P(AllKinds, RoundTrip, ::testing::Range<std::size_t>(0, std::variant_size_v<Message>),
                         kind_name);

TEST(Wire, HeaderLayout) {
  Frame f;
  f.protocol = ProtocolId::p1;
  f.session.fill(0xab);
  f.msg = M5{Tag{}, Tag{}, "sn"};
  Bytes b = encode(f);
  // len | ver | type | proto | session(16) | kcMAC(32) | RES*(32) | 0x0002 "sn"
  ASSERT_EQ(b.size(), 4u + 3 + 16 + 32 + 32 + 2 + 2);
  EXPECT_EQ((Bytes{b.begin(), b.begin() + 7}), (Bytes{0, 0, 0, static_cast<std::uint8_t>(b.size() - 4), 1, 21, 1}));
  EXPECT_EQ(b[7], 0xab);
  EXPECT_EQ(b[b.size() - 4], 0);
  EXPECT_EQ(b[b.size() - 3], 2);
  EXPECT_EQ(b.back(), 'n');
}

TEST(Wire, ShareKindMustMatchProtocol) {
  Frame f;
  f.protocol = ProtocolId::p2;
  f.msg = M4{Tag{}, Nonce{}, "sn"};
  EXPECT_THROW(encode(f), EncodeError);
  f.protocol = ProtocolId::p1;
  f.msg = M4{Tag{}, PointBytes{}, "sn"};
  EXPECT_THROW(encode(f), EncodeError);
  f.msg = M4{Tag{}, Nonce{}, "sn"};
  EXPECT_NO_THROW(encode(f));
}

TEST(Wire, MessageKindMustMatchProtocol) {
  Frame f;
  f.protocol = ProtocolId::p1;
  f.msg = SnResult{};
  EXPECT_THROW(encode(f), EncodeError);
  f.protocol = ProtocolId::baseline;
  f.msg = M7{"x", Suci{{}, Bytes{1}, {}}};
  EXPECT_THROW(encode(f), EncodeError);
}

TEST(Wire, FieldInvariantsOnEncode) {
  Frame f;
  f.msg = HnResult{std::string(65, 'x')};
  EXPECT_THROW(encode(f), EncodeError);
  f.msg = HnResult{""};
  EXPECT_THROW(encode(f), EncodeError);
  f.msg = AttachRequest{Suci{}, "hn"};  // empty C1
  EXPECT_THROW(encode(f), EncodeError);
}

TEST(Wire, TruncationAndTrailingBytesRejected) {
  Frame f;
  f.msg = SnChallenge{};
  Bytes b = encode(f);
  Bytes shorter(b.begin(), b.end() - 1);
  EXPECT_THROW(decode(shorter), DecodeError);
  Bytes longer = b;
  longer.push_back(0);
  EXPECT_THROW(decode(longer), DecodeError);
  // Adjusted length prefix, body one byte short.
  shorter[3] -= 1;
  try {
    decode(shorter);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_NE(e.reason().find("truncated"), std::string::npos);
  }
}

TEST(Wire, UnknownTypeAndProtocol) {
  Frame f;
  f.msg = SnResult{};
  Bytes b = encode(f);
  Bytes bad = b;
  bad[5] = 255;
  try {
    decode(bad);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 5u);
    EXPECT_NE(e.reason().find("unknown msg_type"), std::string::npos);
  }
  bad = b;
  bad[6] = 3;
  try {
    decode(bad);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 6u);
    EXPECT_NE(e.reason().find("unknown protocol_id"), std::string::npos);
  }
  bad = b;
  bad[4] = 2;
  EXPECT_THROW(decode(bad), DecodeError);
}

TEST(Wire, AnchorKeyCarriers) {
  EXPECT_TRUE(carries_anchor_key(HnChallenge{}));
  EXPECT_TRUE(carries_anchor_key(M3{}));
  EXPECT_FALSE(carries_anchor_key(M4{}));
  EXPECT_FALSE(carries_anchor_key(SnChallenge{}));
  EXPECT_FALSE(is_protocol_message(Notice{}));
  EXPECT_TRUE(is_protocol_message(M1{}));
}

TEST(Wire, FuzzTenThousandRandomInputs) {
  auto rng = Rng::seeded(0xf022, "wire-fuzz");
  int parsed = 0;
  int rejected = 0;
  for (int i = 0; i < 10000; ++i) {
    Bytes input;
    switch (rng.uniform(3)) {
      case 0: {  // pure noise
        input.resize(rng.uniform(300));
        rng.fill(input);
        break;
      }
      case 1: {  // plausible header, noisy body
        input.resize(4 + kHeaderLen + rng.uniform(200));
        rng.fill(input);
        const auto len = static_cast<std::uint32_t>(input.size() - 4);
        input[0] = 0;
        input[1] = 0;
        input[2] = static_cast<std::uint8_t>(len >> 8);
        input[3] = static_cast<std::uint8_t>(len);
        input[4] = kWireVersion;
        break;
      }
      default: {  // mutated valid frame
        input = encode(rand_frame(rng.uniform(std::variant_size_v<Message>), rng));
        const auto flips = 1 + rng.uniform(4);
        for (std::uint64_t k = 0; k < flips; ++k) {
          input[rng.uniform(input.size())] ^= static_cast<std::uint8_t>(1 + rng.uniform(255));
        }
        if (rng.uniform(4) == 0) input.resize(rng.uniform(input.size() + 1));
        break;
      }
    }
    try {
      Frame f = decode(input);
      ++parsed;
      // Anything accepted must re-encode to the same bytes.
      ASSERT_EQ(encode(f), input);
    } catch (const DecodeError&) {
      ++rejected;
    }
  }
  EXPECT_EQ(parsed + rejected, 10000);
  EXPECT_GT(parsed, 0);
}

}  // namespace
}  // namespace akalab::wire
