// Copyright 2026 The ASE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Binary index layout (all integers little-endian):
//
//   magic      8 bytes  "ASEINDEX"
//   version    u32
//   dim        u32
//   count      u64
//   records    count x record
//   dedup      u64 n, then n x (str canonical_title, str paper_id), key order
//   trailer    8 bytes  "ASEEND\0\0"
//
//   record  := str paper_id, str title, u8 has_raw, [str raw_abstract],
//              u8 token_mask, for each set bit (aspect order):
//                  u64 n, n x str
//              u8 vector_mask, for each set bit: dim x f64 (IEEE-754 bits)
//   str     := u32 byte length, bytes

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "ase/corpus.hpp"
#include "ase/error.hpp"

namespace ase {

namespace {

constexpr std::array<char, 8> kMagic = {'A', 'S', 'E', 'I', 'N', 'D', 'E', 'X'};
constexpr std::array<char, 8> kTrailer = {'A', 'S', 'E', 'E', 'N', 'D', '\0', '\0'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const char* p, std::size_t n) { out_.write(p, static_cast<std::streamsize>(n)); }

  template <typename T>
  void uint(T v) {
    std::array<char, sizeof(T)> buf;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
    }
    bytes(buf.data(), buf.size());
  }

  void f64(double v) { uint(std::bit_cast<std::uint64_t>(v)); }

  void str(const std::string& s) {
    if (s.size() > UINT32_MAX) throw Error(ErrorCode::kInvalidArgument, "string too long");
    uint(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(char* p, std::size_t n) {
    in_.read(p, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw Error(ErrorCode::kFormat, "index stream is truncated");
    }
  }

  template <typename T>
  T uint() {
    std::array<unsigned char, sizeof(T)> buf;
    bytes(reinterpret_cast<char*>(buf.data()), buf.size());
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return static_cast<T>(v);
  }

  double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }

  std::string str() {
    auto n = uint<std::uint32_t>();
    std::string s;
    // Grow in bounded chunks so a corrupt length cannot force a huge allocation.
    constexpr std::size_t kChunk = 1 << 16;
    while (s.size() < n) {
      std::size_t take = std::min<std::size_t>(kChunk, n - s.size());
      std::size_t old = s.size();
      s.resize(old + take);
      bytes(s.data() + old, take);
    }
    return s;
  }

 private:
  std::istream& in_;
};

}  // namespace

void save_index(const CorpusIndex& index, std::ostream& out) {
  Writer w(out);
  w.bytes(kMagic.data(), kMagic.size());
  w.uint(kIndexFormatVersion);
  w.uint(static_cast<std::uint32_t>(index.dim()));
  w.uint(static_cast<std::uint64_t>(index.size()));
  for (std::size_t row = 0; row < index.size(); ++row) {
    const PaperRecord& rec = index.record(row);
    w.str(rec.paper_id);
    w.str(rec.title);
    w.uint(static_cast<std::uint8_t>(rec.raw_abstract ? 1 : 0));
    if (rec.raw_abstract) w.str(*rec.raw_abstract);

    std::uint8_t token_mask = 0;
    for (Aspect a : kAllAspects) {
      if (rec.aspect_tokens(a)) token_mask |= static_cast<std::uint8_t>(1u << aspect_index(a));
    }
    w.uint(token_mask);
    for (Aspect a : kAllAspects) {
      const auto& tokens = rec.aspect_tokens(a);
      if (!tokens) continue;
      w.uint(static_cast<std::uint64_t>(tokens->size()));
      for (const auto& t : *tokens) w.str(t);
    }

    std::uint8_t vector_mask = 0;
    for (Aspect a : kAllAspects) {
      if (index.aspect_vector(row, a)) vector_mask |= static_cast<std::uint8_t>(1u << aspect_index(a));
    }
    w.uint(vector_mask);
    for (Aspect a : kAllAspects) {
      const auto& v = index.aspect_vector(row, a);
      if (!v) continue;
      for (double x : *v) w.f64(x);
    }
  }
  w.uint(static_cast<std::uint64_t>(index.dedup_map().size()));
  for (const auto& [key, id] : index.dedup_map()) {
    w.str(key);
    w.str(id);
  }
  w.bytes(kTrailer.data(), kTrailer.size());
  if (!out) throw Error(ErrorCode::kIo, "failed writing index stream");
}

void save_index_file(const CorpusIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open index file for writing: " + path.string());
  save_index(index, out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "failed writing index file " + path.string());
}

CorpusIndex load_index(std::istream& in) {
  Reader r(in);
  std::array<char, 8> magic{};
  try {
    r.bytes(magic.data(), magic.size());
  } catch (const Error&) {
    throw Error(ErrorCode::kFormat, "index stream is empty or truncated");
  }
  if (magic != kMagic) throw Error(ErrorCode::kFormat, "not an index file (bad magic)");
  auto version = r.uint<std::uint32_t>();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::kVersion, "index format version " + std::to_string(version) +
                                         " is not supported (expected " +
                                         std::to_string(kIndexFormatVersion) + ")");
  }
  const std::size_t dim = r.uint<std::uint32_t>();
  const auto count = r.uint<std::uint64_t>();

  std::vector<PaperRecord> records;
  std::vector<AspectVectorSet> vectors;
  for (std::uint64_t i = 0; i < count; ++i) {
    PaperRecord rec;
    rec.paper_id = r.str();
    rec.title = r.str();
    if (r.uint<std::uint8_t>() != 0) rec.raw_abstract = r.str();

    auto token_mask = r.uint<std::uint8_t>();
    for (Aspect a : kAllAspects) {
      if (!(token_mask & (1u << aspect_index(a)))) continue;
      auto n = r.uint<std::uint64_t>();
      TokenList tokens;
      for (std::uint64_t t = 0; t < n; ++t) tokens.push_back(r.str());
      rec.tokens[aspect_index(a)] = std::move(tokens);
    }

    AspectVectorSet set;
    auto vector_mask = r.uint<std::uint8_t>();
    for (Aspect a : kAllAspects) {
      if (!(vector_mask & (1u << aspect_index(a)))) continue;
      Vector v(dim);
      for (double& x : v) x = r.f64();
      set[aspect_index(a)] = std::move(v);
    }
    records.push_back(std::move(rec));
    vectors.push_back(std::move(set));
  }

  std::map<std::string, std::string> dedup;
  auto n_dedup = r.uint<std::uint64_t>();
  for (std::uint64_t i = 0; i < n_dedup; ++i) {
    std::string key = r.str();
    dedup.emplace(std::move(key), r.str());
  }
  std::array<char, 8> trailer{};
  r.bytes(trailer.data(), trailer.size());
  if (trailer != kTrailer) throw Error(ErrorCode::kFormat, "index trailer is corrupt");

  return CorpusIndex(std::move(records), std::move(vectors), std::move(dedup), dim);
}

CorpusIndex load_index_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open index file " + path.string());
  return load_index(in);
}

}  // namespace ase
