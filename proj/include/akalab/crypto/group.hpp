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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "akalab/crypto/bytes.hpp"
#include "akalab/crypto/counters.hpp"
#include "akalab/crypto/rng.hpp"

namespace akalab::crypto {

enum class CurveId : std::uint8_t {
  secp256r1 = 1,
  curve25519 = 2,
};

std::string_view curve_name(CurveId curve);

// Throws std::invalid_argument for anything other than "secp256r1" / "curve25519".
CurveId parse_curve(std::string_view name);

class CryptoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedCurve : public CryptoError {
 public:
  using CryptoError::CryptoError;
};

// Malformed, off-curve or identity encodings.
class InvalidPoint : public CryptoError {
 public:
  using CryptoError::CryptoError;
};

inline constexpr std::size_t kScalarLen = 32;
inline constexpr std::size_t kP256PointLen = 33;
inline constexpr std::size_t kX25519PointLen = 32;

std::size_t point_length(CurveId curve);

class Scalar;

/// A validated public group element: a compressed SEC1 point for secp256r1
/// (33 bytes) or an X25519 u-coordinate (32 bytes). Never the identity.
class GroupElement {
 public:
  static GroupElement decode(CurveId curve, ByteView encoding);

  CurveId curve() const { return curve_; }
  ByteView encoding() const { return {bytes_.data(), size_}; }
  Bytes to_bytes() const { return {bytes_.begin(), bytes_.begin() + size_}; }

  bool operator==(const GroupElement& o) const {
    return curve_ == o.curve_ && size_ == o.size_ && bytes_ == o.bytes_;
  }

 private:
  friend GroupElement mul_generator(const Scalar& x, OpCounters& ops);
  GroupElement(CurveId curve, ByteView encoding);

  CurveId curve_;
  std::uint8_t size_;
  std::array<std::uint8_t, kP256PointLen> bytes_{};
};

/// Secret exponent, 32 bytes big-endian, 1 <= value < q for secp256r1.
/// Wiped on destruction and on move-from.
class Scalar {
 public:
  static Scalar random(CurveId curve, Rng& rng);

  // Interprets 32 uniform bytes as an exponent (reduced mod q for
  // secp256r1). Returns nullopt only when the result would be zero.
  static std::optional<Scalar> from_uniform_bytes(CurveId curve, ByteView bytes);

  // Strict parse: rejects values outside [1, q).
  static Scalar decode(CurveId curve, ByteView bytes);

  Scalar(const Scalar&) = delete;
  Scalar& operator=(const Scalar&) = delete;
  Scalar(Scalar&& o) noexcept;
  Scalar& operator=(Scalar&& o) noexcept;
  ~Scalar();

  CurveId curve() const { return curve_; }
  ByteView bytes() const { return value_; }
  Scalar clone() const { return Scalar(curve_, value_); }

  void wipe();
  bool wiped() const { return is_all_zero(value_); }

 private:
  Scalar(CurveId curve, const std::array<std::uint8_t, kScalarLen>& value);

  CurveId curve_;
  std::array<std::uint8_t, kScalarLen> value_{};
};

/// x * g. One scalar multiplication.
GroupElement mul_generator(const Scalar& x, OpCounters& ops);

/// x * Y, returned as the affine x-coordinate (secp256r1) or the X25519
/// output. One scalar multiplication. Throws InvalidPoint on a degenerate
/// result.
Block32 mul_point_x(const Scalar& x, const GroupElement& y, OpCounters& ops);

/// x * Y, returned as a full compressed encoding (secp256r1) or the X25519
/// output. One scalar multiplication.
Bytes mul_point_encoded(const Scalar& x, const GroupElement& y, OpCounters& ops);

// DH wrappers over the two functions above.
inline GroupElement dh_pub(const Scalar& x, OpCounters& ops) { return mul_generator(x, ops); }
inline Bytes dh_shared(const Scalar& x, const GroupElement& y, OpCounters& ops) {
  return mul_point_encoded(x, y, ops);
}

}  // namespace akalab::crypto
