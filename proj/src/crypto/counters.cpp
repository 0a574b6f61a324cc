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

#include "akalab/crypto/counters.hpp"

#include <sstream>

namespace akalab::crypto {

std::string OpCounters::to_string() const {
  std::ostringstream os;
  os << "hash=" << hash_ops << " mult=" << scalar_mults << " enc=" << sym_encs
     << " dec=" << sym_decs << " xor=" << xors << " add=" << adds << " rng=" << rng_draws;
  return os.str();
}

}  // namespace akalab::crypto
