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

#include "akalab/crypto/rng.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <stdexcept>
#include <vector>

namespace akalab::crypto {

struct Rng::State {
  EVP_CIPHER_CTX* ctx = nullptr;
  ~State() { EVP_CIPHER_CTX_free(ctx); }
};

Rng::Rng(std::unique_ptr<State> state) : state_(std::move(state)) {}
Rng::Rng(Rng&&) noexcept = default;
Rng& Rng::operator=(Rng&&) noexcept = default;
Rng::~Rng() = default;

Rng Rng::system() { return Rng(nullptr); }

Rng Rng::seeded(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  std::vector<std::uint8_t> material;
  static constexpr std::string_view kLabel = "akalab-rng-v1";
  material.insert(material.end(), kLabel.begin(), kLabel.end());
  for (int i = 7; i >= 0; --i) material.push_back(static_cast<std::uint8_t>(seed >> (8 * i)));
  material.push_back(static_cast<std::uint8_t>(stream.size()));
  material.insert(material.end(), stream.begin(), stream.end());
  for (int i = 7; i >= 0; --i) material.push_back(static_cast<std::uint8_t>(index >> (8 * i)));

  std::array<std::uint8_t, SHA256_DIGEST_LENGTH> key{};
  SHA256(material.data(), material.size(), key.data());
  std::array<std::uint8_t, 16> iv{};  // block counter 0, nonce 0

  auto state = std::make_unique<State>();
  state->ctx = EVP_CIPHER_CTX_new();
  if (state->ctx == nullptr ||
      EVP_EncryptInit_ex(state->ctx, EVP_chacha20(), nullptr, key.data(), iv.data()) != 1) {
    throw std::runtime_error("Rng: chacha20 init failed");
  }
  secure_wipe(key);
  return Rng(std::move(state));
}

void Rng::fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (!state_) {
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
      throw std::runtime_error("Rng: RAND_bytes failed");
    }
    return;
  }
  std::fill(out.begin(), out.end(), 0);
  int len = 0;
  if (EVP_EncryptUpdate(state_->ctx, out.data(), &len, out.data(), static_cast<int>(out.size())) != 1) {
    throw std::runtime_error("Rng: keystream failed");
  }
}

std::uint64_t Rng::next_u64() {
  auto b = bytes<8>();
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::uniform: zero bound");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

}  // namespace akalab::crypto
