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

#include "akalab/wire/codec.hpp"

#include <utility>

namespace akalab::wire {

DecodeError::DecodeError(std::size_t offset, std::string reason)
    : std::runtime_error("decode error at offset " + std::to_string(offset) + ": " + reason),
      offset_(offset),
      reason_(std::move(reason)) {}

namespace {

constexpr std::size_t kMaxC1Len = 1024;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v >> 8));
    u8(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) u8(static_cast<std::uint8_t>(v >> s));
  }
  void raw(ByteView v) { out_.insert(out_.end(), v.begin(), v.end()); }
  void var(ByteView v) {
    u16(static_cast<std::uint16_t>(v.size()));
    raw(v);
  }
  Bytes& out() { return out_; }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}

  std::size_t offset() const { return pos_; }
  bool done() const { return pos_ == in_.size(); }

  [[noreturn]] void fail(const std::string& reason) const { throw DecodeError(pos_, reason); }

  ByteView take(std::size_t n, const char* what) {
    if (in_.size() - pos_ < n) fail(std::string("truncated ") + what);
    ByteView v = in_.subspan(pos_, n);
    pos_ += n;
    return v;
  }
  std::uint8_t u8(const char* what) { return take(1, what)[0]; }
  std::uint16_t u16(const char* what) {
    auto b = take(2, what);
    return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
  }
  std::uint32_t u32(const char* what) {
    auto b = take(4, what);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
  }
  template <std::size_t N>
  void fixed(std::array<std::uint8_t, N>& dst, const char* what) {
    auto b = take(N, what);
    std::copy(b.begin(), b.end(), dst.begin());
  }
  ByteView var(const char* what) {
    const std::size_t n = u16(what);
    return take(n, what);
  }

 private:
  ByteView in_;
  std::size_t pos_ = 0;
};

// ---- field helpers ----

void put_identity(Writer& w, const std::string& s, const char* what, bool allow_empty) {
  if (s.size() > kMaxIdentityLen) throw EncodeError(std::string(what) + " longer than 64 bytes");
  if (!allow_empty && s.empty()) throw EncodeError(std::string(what) + " is empty");
  w.var(as_bytes(s));
}

void get_identity(Reader& r, std::string& s, const char* what, bool allow_empty) {
  const std::size_t at = r.offset();
  auto b = r.var(what);
  if (b.size() > kMaxIdentityLen) throw DecodeError(at, std::string(what) + " longer than 64 bytes");
  if (!allow_empty && b.empty()) throw DecodeError(at, std::string(what) + " is empty");
  s.assign(b.begin(), b.end());
}

void put(Writer& w, const Suci& s) {
  if (s.c1.empty() || s.c1.size() > kMaxC1Len) throw EncodeError("SUCI C1 length out of range");
  w.raw(s.c0);
  w.var(s.c1);
  w.raw(s.mac);
}

void get(Reader& r, Suci& s) {
  r.fixed(s.c0, "SUCI C0");
  const std::size_t at = r.offset();
  auto c1 = r.var("SUCI C1");
  if (c1.empty() || c1.size() > kMaxC1Len) throw DecodeError(at, "SUCI C1 length out of range");
  s.c1.assign(c1.begin(), c1.end());
  r.fixed(s.mac, "SUCI MAC");
}

void put(Writer& w, const Autn& a) {
  w.raw(a.conc);
  w.raw(a.mac);
}

void get(Reader& r, Autn& a) {
  r.fixed(a.conc, "AUTN CONC");
  r.fixed(a.mac, "AUTN MAC");
}

void put_share(Writer& w, const ChallengeShare& s, ProtocolId p) {
  if (p == ProtocolId::p1 && !std::holds_alternative<Nonce>(s)) {
    throw EncodeError("protocol 1 challenge share must be a 32-byte nonce");
  }
  if (p == ProtocolId::p2 && !std::holds_alternative<PointBytes>(s)) {
    throw EncodeError("protocol 2 challenge share must be a group element");
  }
  w.raw(share_bytes(s));
}

void get_share(Reader& r, ChallengeShare& s, ProtocolId p) {
  if (p == ProtocolId::p2) {
    PointBytes pt{};
    r.fixed(pt, "challenge share");
    s = pt;
  } else {
    Nonce n{};
    r.fixed(n, "challenge share");
    s = n;
  }
}

// ---- message bodies ----

void put(Writer& w, const AttachRequest& m, ProtocolId) {
  put(w, m.suci);
  put_identity(w, m.id_hn, "ID_HN", false);
}
void get(Reader& r, AttachRequest& m, ProtocolId) {
  get(r, m.suci);
  get_identity(r, m.id_hn, "ID_HN", false);
}

void put(Writer& w, const SnToHnAttach& m, ProtocolId) {
  put(w, m.suci);
  put_identity(w, m.id_hn, "ID_HN", false);
  put_identity(w, m.id_sn, "ID_SN", false);
}
void get(Reader& r, SnToHnAttach& m, ProtocolId) {
  get(r, m.suci);
  get_identity(r, m.id_hn, "ID_HN", false);
  get_identity(r, m.id_sn, "ID_SN", false);
}

void put(Writer& w, const HnChallenge& m, ProtocolId) {
  w.raw(m.r);
  put(w, m.autn);
  w.raw(m.hxres);
  w.raw(m.kseaf);
}
void get(Reader& r, HnChallenge& m, ProtocolId) {
  r.fixed(m.r, "R");
  get(r, m.autn);
  r.fixed(m.hxres, "HXRES");
  r.fixed(m.kseaf, "K_SEAF");
}

void put(Writer& w, const SnChallenge& m, ProtocolId) {
  w.raw(m.r);
  put(w, m.autn);
}
void get(Reader& r, SnChallenge& m, ProtocolId) {
  r.fixed(m.r, "R");
  get(r, m.autn);
}

void put(Writer& w, const UeResponse& m, ProtocolId) {
  w.u8(static_cast<std::uint8_t>(m.kind));
  switch (m.kind) {
    case ResponseKind::res:
      w.raw(m.res);
      break;
    case ResponseKind::mac_failure:
      break;
    case ResponseKind::sync_failure:
      put(w, m.autn_star);
      break;
    default:
      throw EncodeError("unknown response kind");
  }
}
void get(Reader& r, UeResponse& m, ProtocolId) {
  const std::size_t at = r.offset();
  const auto kind = r.u8("response kind");
  switch (kind) {
    case static_cast<std::uint8_t>(ResponseKind::res):
      m.kind = ResponseKind::res;
      r.fixed(m.res, "RES");
      break;
    case static_cast<std::uint8_t>(ResponseKind::mac_failure):
      m.kind = ResponseKind::mac_failure;
      break;
    case static_cast<std::uint8_t>(ResponseKind::sync_failure):
      m.kind = ResponseKind::sync_failure;
      get(r, m.autn_star);
      break;
    default:
      throw DecodeError(at, "unknown response kind");
  }
}

void put(Writer& w, const SnResult& m, ProtocolId) { w.raw(m.res); }
void get(Reader& r, SnResult& m, ProtocolId) { r.fixed(m.res, "RES"); }

void put(Writer& w, const HnResult& m, ProtocolId) { put_identity(w, m.supi, "SUPI", false); }
void get(Reader& r, HnResult& m, ProtocolId) { get_identity(r, m.supi, "SUPI", false); }

void put(Writer& w, const ResyncForward& m, ProtocolId) {
  put(w, m.autn_star);
  w.raw(m.r);
  put(w, m.suci);
}
void get(Reader& r, ResyncForward& m, ProtocolId) {
  get(r, m.autn_star);
  r.fixed(m.r, "R");
  get(r, m.suci);
}

void put(Writer& w, const SnKeyConfirm& m, ProtocolId) { w.raw(m.mac); }
void get(Reader& r, SnKeyConfirm& m, ProtocolId) { r.fixed(m.mac, "confirmation MAC"); }

void put(Writer& w, const UeKeyConfirm& m, ProtocolId) { w.raw(m.mac); }
void get(Reader& r, UeKeyConfirm& m, ProtocolId) { r.fixed(m.mac, "confirmation MAC"); }

void put(Writer& w, const M1& m, ProtocolId) {
  put(w, m.suci);
  w.raw(m.mac);
  put_identity(w, m.id_hn, "ID_HN", false);
}
void get(Reader& r, M1& m, ProtocolId) {
  get(r, m.suci);
  r.fixed(m.mac, "MAC");
  get_identity(r, m.id_hn, "ID_HN", false);
}

void put(Writer& w, const M2& m, ProtocolId) {
  put(w, m.suci);
  w.raw(m.mac);
  put_identity(w, m.id_hn, "ID_HN", false);
  put_identity(w, m.id_sn, "ID_SN", false);
}
void get(Reader& r, M2& m, ProtocolId) {
  get(r, m.suci);
  r.fixed(m.mac, "MAC");
  get_identity(r, m.id_hn, "ID_HN", false);
  get_identity(r, m.id_sn, "ID_SN", false);
}

void put(Writer& w, const M3& m, ProtocolId p) {
  w.raw(m.hxres_star);
  w.raw(m.mac_star);
  w.raw(m.xr);
  put_share(w, m.share, p);
  w.raw(m.kseaf);
}
void get(Reader& r, M3& m, ProtocolId p) {
  r.fixed(m.hxres_star, "HxRES*");
  r.fixed(m.mac_star, "MAC*");
  r.fixed(m.xr, "xR");
  get_share(r, m.share, p);
  r.fixed(m.kseaf, "K_SEAF");
}

void put(Writer& w, const M4& m, ProtocolId p) {
  w.raw(m.mac_star);
  put_share(w, m.share, p);
  put_identity(w, m.id_sn, "ID_SN", false);
}
void get(Reader& r, M4& m, ProtocolId p) {
  r.fixed(m.mac_star, "MAC*");
  get_share(r, m.share, p);
  get_identity(r, m.id_sn, "ID_SN", false);
}

void put(Writer& w, const M5& m, ProtocolId) {
  w.raw(m.kcmac);
  w.raw(m.res_star);
  put_identity(w, m.id_sn, "ID_SN", false);
}
void get(Reader& r, M5& m, ProtocolId) {
  r.fixed(m.kcmac, "kcMAC");
  r.fixed(m.res_star, "RES*");
  get_identity(r, m.id_sn, "ID_SN", false);
}

void put(Writer& w, const M6& m, ProtocolId p) {
  w.raw(m.kcmac);
  w.raw(m.res_star);
  put_share(w, m.share, p);
}
void get(Reader& r, M6& m, ProtocolId p) {
  r.fixed(m.kcmac, "kcMAC");
  r.fixed(m.res_star, "RES*");
  get_share(r, m.share, p);
}

void put(Writer& w, const M7& m, ProtocolId) {
  put_identity(w, m.supi, "SUPI", false);
  put(w, m.suci);
}
void get(Reader& r, M7& m, ProtocolId) {
  get_identity(r, m.supi, "SUPI", false);
  get(r, m.suci);
}

void put(Writer& w, const Notice& m, ProtocolId) {
  if (notice_name(m.code) == "unknown") throw EncodeError("unknown notice code");
  w.u8(static_cast<std::uint8_t>(m.code));
  w.u32(m.value);
}
void get(Reader& r, Notice& m, ProtocolId) {
  const std::size_t at = r.offset();
  m.code = static_cast<NoticeCode>(r.u8("notice code"));
  if (notice_name(m.code) == "unknown") throw DecodeError(at, "unknown notice code");
  m.value = r.u32("notice value");
}

bool valid_under(std::size_t index, ProtocolId p) {
  if (index == std::variant_size_v<Message> - 1) return true;  // Notice
  const bool baseline_kind = index < 10;
  return baseline_kind == (p == ProtocolId::baseline);
}

template <std::size_t... I>
Message decode_body(std::size_t index, Reader& r, ProtocolId p, std::index_sequence<I...>) {
  Message out;
  ((index == I ? (void)([&] {
     std::variant_alternative_t<I, Message> m{};
     get(r, m, p);
     out = std::move(m);
   }())
               : void()),
   ...);
  return out;
}

std::optional<std::size_t> index_for_type(std::uint8_t type) {
  constexpr std::size_t n = std::variant_size_v<Message>;
  static const auto table = []<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<std::uint8_t, n>{msg_type(Message(std::in_place_index<I>))...};
  }(std::make_index_sequence<n>{});
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i] == type) return i;
  }
  return std::nullopt;
}

}  // namespace

Bytes encode(const Frame& frame) {
  if (frame.version != kWireVersion) throw EncodeError("unsupported wire version");
  if (frame.protocol > ProtocolId::p2) throw EncodeError("unknown protocol id");
  if (!valid_under(frame.msg.index(), frame.protocol)) {
    throw EncodeError(std::string(message_name(frame.msg)) + " is not valid under protocol " +
                      std::string(protocol_name(frame.protocol)));
  }
  Writer w;
  w.u32(0);
  w.u8(frame.version);
  w.u8(msg_type(frame.msg));
  w.u8(static_cast<std::uint8_t>(frame.protocol));
  w.raw(frame.session);
  std::visit([&](const auto& m) { put(w, m, frame.protocol); }, frame.msg);
  Bytes& out = w.out();
  if (out.size() > kMaxFrameLen) throw EncodeError("frame exceeds maximum length");
  const auto len = static_cast<std::uint32_t>(out.size() - kLengthPrefixLen);
  for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>(len >> (24 - 8 * i));
  return std::move(out);
}

std::size_t frame_size_from_prefix(ByteView prefix) {
  Reader r(prefix);
  const std::uint32_t len = r.u32("length");
  if (len < kHeaderLen) throw DecodeError(0, "declared length shorter than header");
  if (len + kLengthPrefixLen > kMaxFrameLen) throw DecodeError(0, "declared length exceeds maximum");
  return len + kLengthPrefixLen;
}

Frame decode(ByteView data) {
  const std::size_t total = frame_size_from_prefix(data.first(std::min(data.size(), kLengthPrefixLen)));
  if (data.size() < total) throw DecodeError(data.size(), "truncated frame");
  if (data.size() > total) throw DecodeError(total, "trailing bytes after frame");

  Reader r(data);
  r.u32("length");
  Frame f;
  const std::size_t version_at = r.offset();
  f.version = r.u8("version");
  if (f.version != kWireVersion) throw DecodeError(version_at, "unsupported wire version");
  const std::size_t type_at = r.offset();
  const std::uint8_t type = r.u8("msg_type");
  const auto index = index_for_type(type);
  if (!index) throw DecodeError(type_at, "unknown msg_type " + std::to_string(type));
  const std::size_t proto_at = r.offset();
  const std::uint8_t proto = r.u8("protocol_id");
  if (proto > static_cast<std::uint8_t>(ProtocolId::p2)) {
    throw DecodeError(proto_at, "unknown protocol_id " + std::to_string(proto));
  }
  f.protocol = static_cast<ProtocolId>(proto);
  if (!valid_under(*index, f.protocol)) throw DecodeError(type_at, "msg_type not valid under protocol_id");
  r.fixed(f.session, "session_id");
  f.msg = decode_body(*index, r, f.protocol, std::make_index_sequence<std::variant_size_v<Message>>{});
  if (!r.done()) r.fail("trailing bytes in body");
  return f;
}

}  // namespace akalab::wire
