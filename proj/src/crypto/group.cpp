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

#include "akalab/crypto/group.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/obj_mac.h>

#include <memory>

namespace akalab::crypto {

namespace {

struct BnDeleter {
  void operator()(BIGNUM* p) const { BN_clear_free(p); }
};
struct BnCtxDeleter {
  void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct PointDeleter {
  void operator()(EC_POINT* p) const { EC_POINT_clear_free(p); }
};
struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct PkeyCtxDeleter {
  void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;
using PkeyPtr = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter>;

// EC_GROUP is immutable after construction and safe to share across threads.
const EC_GROUP* p256() {
  static const EC_GROUP* group = EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1);
  if (group == nullptr) throw CryptoError("secp256r1 unavailable in the crypto backend");
  return group;
}

const BIGNUM* p256_order() { return EC_GROUP_get0_order(p256()); }

BnPtr scalar_bn(const Scalar& x) {
  BnPtr bn(BN_bin2bn(x.bytes().data(), static_cast<int>(x.bytes().size()), nullptr));
  if (!bn) throw CryptoError("BN_bin2bn failed");
  BN_set_flags(bn.get(), BN_FLG_CONSTTIME);
  return bn;
}

PointPtr p256_decode(ByteView encoding, BN_CTX* ctx) {
  PointPtr point(EC_POINT_new(p256()));
  if (!point) throw CryptoError("EC_POINT_new failed");
  if (EC_POINT_oct2point(p256(), point.get(), encoding.data(), encoding.size(), ctx) != 1) {
    throw InvalidPoint("point does not decode on secp256r1");
  }
  if (EC_POINT_is_at_infinity(p256(), point.get()) == 1) throw InvalidPoint("identity point");
  if (EC_POINT_is_on_curve(p256(), point.get(), ctx) != 1) throw InvalidPoint("point not on curve");
  return point;
}

Bytes p256_encode(const EC_POINT* point, BN_CTX* ctx) {
  if (EC_POINT_is_at_infinity(p256(), point) == 1) throw InvalidPoint("identity result");
  Bytes out(kP256PointLen);
  if (EC_POINT_point2oct(p256(), point, POINT_CONVERSION_COMPRESSED, out.data(), out.size(), ctx) !=
      kP256PointLen) {
    throw CryptoError("EC_POINT_point2oct failed");
  }
  return out;
}

BnCtxPtr new_ctx() {
  BnCtxPtr ctx(BN_CTX_new());
  if (!ctx) throw CryptoError("BN_CTX_new failed");
  return ctx;
}

PkeyPtr x25519_private(const Scalar& x) {
  PkeyPtr key(EVP_PKEY_new_raw_private_key(EVP_PKEY_X25519, nullptr, x.bytes().data(), x.bytes().size()));
  if (!key) throw CryptoError("X25519 private key import failed");
  return key;
}

Bytes x25519_derive(const Scalar& x, const GroupElement& y) {
  PkeyPtr priv = x25519_private(x);
  PkeyPtr peer(EVP_PKEY_new_raw_public_key(EVP_PKEY_X25519, nullptr, y.encoding().data(), y.encoding().size()));
  if (!peer) throw InvalidPoint("X25519 public key import failed");
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new(priv.get(), nullptr));
  std::size_t len = kX25519PointLen;
  Bytes out(len);
  if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 || EVP_PKEY_derive_set_peer(ctx.get(), peer.get()) != 1 ||
      EVP_PKEY_derive(ctx.get(), out.data(), &len) != 1 || len != kX25519PointLen) {
    // OpenSSL refuses an all-zero output, i.e. a low-order peer point.
    throw InvalidPoint("X25519 derivation failed (low-order point?)");
  }
  return out;
}

}  // namespace

std::string_view curve_name(CurveId curve) {
  switch (curve) {
    case CurveId::secp256r1:
      return "secp256r1";
    case CurveId::curve25519:
      return "curve25519";
  }
  return "unknown";
}

CurveId parse_curve(std::string_view name) {
  if (name == "secp256r1" || name == "p256") return CurveId::secp256r1;
  if (name == "curve25519" || name == "x25519") return CurveId::curve25519;
  throw std::invalid_argument("unsupported curve: " + std::string(name));
}

std::size_t point_length(CurveId curve) {
  switch (curve) {
    case CurveId::secp256r1:
      return kP256PointLen;
    case CurveId::curve25519:
      return kX25519PointLen;
  }
  throw UnsupportedCurve("unsupported curve id " + std::to_string(static_cast<int>(curve)));
}

GroupElement::GroupElement(CurveId curve, ByteView encoding)
    : curve_(curve), size_(static_cast<std::uint8_t>(encoding.size())) {
  std::copy(encoding.begin(), encoding.end(), bytes_.begin());
}

GroupElement GroupElement::decode(CurveId curve, ByteView encoding) {
  if (encoding.size() != point_length(curve)) throw InvalidPoint("wrong point length");
  if (curve == CurveId::secp256r1) {
    auto ctx = new_ctx();
    p256_decode(encoding, ctx.get());
  } else {
    std::uint8_t acc = 0;
    for (auto b : encoding) acc |= b;
    if (acc == 0) throw InvalidPoint("identity point");
  }
  return GroupElement(curve, encoding);
}

Scalar::Scalar(CurveId curve, const std::array<std::uint8_t, kScalarLen>& value) : curve_(curve), value_(value) {}

Scalar::Scalar(Scalar&& o) noexcept : curve_(o.curve_), value_(o.value_) { o.wipe(); }

Scalar& Scalar::operator=(Scalar&& o) noexcept {
  if (this != &o) {
    curve_ = o.curve_;
    value_ = o.value_;
    o.wipe();
  }
  return *this;
}

Scalar::~Scalar() { wipe(); }

void Scalar::wipe() { secure_wipe(value_); }

std::optional<Scalar> Scalar::from_uniform_bytes(CurveId curve, ByteView bytes) {
  if (bytes.size() != kScalarLen) throw std::invalid_argument("scalar material must be 32 bytes");
  std::array<std::uint8_t, kScalarLen> value{};
  if (curve == CurveId::curve25519) {
    std::copy(bytes.begin(), bytes.end(), value.begin());
    if (is_all_zero(value)) return std::nullopt;
    return Scalar(curve, value);
  }
  if (curve != CurveId::secp256r1) throw UnsupportedCurve("unsupported curve");
  auto ctx = new_ctx();
  BnPtr raw(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
  BnPtr reduced(BN_new());
  if (!raw || !reduced || BN_nnmod(reduced.get(), raw.get(), p256_order(), ctx.get()) != 1) {
    throw CryptoError("scalar reduction failed");
  }
  if (BN_is_zero(reduced.get())) return std::nullopt;
  if (BN_bn2binpad(reduced.get(), value.data(), static_cast<int>(value.size())) != kScalarLen) {
    throw CryptoError("scalar encode failed");
  }
  return Scalar(curve, value);
}

Scalar Scalar::decode(CurveId curve, ByteView bytes) {
  if (bytes.size() != kScalarLen) throw std::invalid_argument("scalar must be 32 bytes");
  std::array<std::uint8_t, kScalarLen> value{};
  std::copy(bytes.begin(), bytes.end(), value.begin());
  if (is_all_zero(value)) throw std::invalid_argument("zero scalar");
  if (curve == CurveId::secp256r1) {
    BnPtr raw(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
    if (!raw || BN_cmp(raw.get(), p256_order()) >= 0) throw std::invalid_argument("scalar out of range");
  } else if (curve != CurveId::curve25519) {
    throw UnsupportedCurve("unsupported curve");
  }
  return Scalar(curve, value);
}

Scalar Scalar::random(CurveId curve, Rng& rng) {
  point_length(curve);  // validates the id
  for (;;) {
    auto material = rng.bytes<kScalarLen>();
    auto s = from_uniform_bytes(curve, material);
    secure_wipe(material);
    if (s) return std::move(*s);
  }
}

GroupElement mul_generator(const Scalar& x, OpCounters& ops) {
  ops.scalar_mults += 1;
  if (x.curve() == CurveId::curve25519) {
    PkeyPtr key = x25519_private(x);
    Bytes pub(kX25519PointLen);
    std::size_t len = pub.size();
    if (EVP_PKEY_get_raw_public_key(key.get(), pub.data(), &len) != 1 || len != kX25519PointLen) {
      throw CryptoError("X25519 public key export failed");
    }
    std::uint8_t acc = 0;
    for (auto b : pub) acc |= b;
    if (acc == 0) throw InvalidPoint("identity result");
    return GroupElement(CurveId::curve25519, pub);
  }
  auto ctx = new_ctx();
  BnPtr k = scalar_bn(x);
  PointPtr r(EC_POINT_new(p256()));
  if (!r || EC_POINT_mul(p256(), r.get(), k.get(), nullptr, nullptr, ctx.get()) != 1) {
    throw CryptoError("EC_POINT_mul failed");
  }
  return GroupElement(CurveId::secp256r1, p256_encode(r.get(), ctx.get()));
}

namespace {

PointPtr p256_mul(const Scalar& x, const GroupElement& y, BN_CTX* ctx) {
  if (y.curve() != CurveId::secp256r1) throw InvalidPoint("curve mismatch");
  PointPtr p = p256_decode(y.encoding(), ctx);
  BnPtr k = scalar_bn(x);
  PointPtr r(EC_POINT_new(p256()));
  if (!r || EC_POINT_mul(p256(), r.get(), nullptr, p.get(), k.get(), ctx) != 1) {
    throw CryptoError("EC_POINT_mul failed");
  }
  if (EC_POINT_is_at_infinity(p256(), r.get()) == 1) throw InvalidPoint("identity result");
  return r;
}

}  // namespace

Block32 mul_point_x(const Scalar& x, const GroupElement& y, OpCounters& ops) {
  if (x.curve() != y.curve()) throw InvalidPoint("curve mismatch");
  ops.scalar_mults += 1;
  if (x.curve() == CurveId::curve25519) return to_array<32>(x25519_derive(x, y));
  auto ctx = new_ctx();
  PointPtr r = p256_mul(x, y, ctx.get());
  BnPtr xs(BN_new());
  if (!xs || EC_POINT_get_affine_coordinates(p256(), r.get(), xs.get(), nullptr, ctx.get()) != 1) {
    throw CryptoError("affine coordinates failed");
  }
  Block32 out{};
  if (BN_bn2binpad(xs.get(), out.data(), static_cast<int>(out.size())) != 32) {
    throw CryptoError("coordinate encode failed");
  }
  return out;
}

Bytes mul_point_encoded(const Scalar& x, const GroupElement& y, OpCounters& ops) {
  if (x.curve() != y.curve()) throw InvalidPoint("curve mismatch");
  ops.scalar_mults += 1;
  if (x.curve() == CurveId::curve25519) return x25519_derive(x, y);
  auto ctx = new_ctx();
  PointPtr r = p256_mul(x, y, ctx.get());
  return p256_encode(r.get(), ctx.get());
}

}  // namespace akalab::crypto
