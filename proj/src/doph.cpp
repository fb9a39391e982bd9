#include "pblock/doph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>

#include "pblock/csv.hpp"
#include "pblock/error.hpp"
#include "pblock/hash.hpp"

namespace pblock {

namespace {

constexpr std::string_view kModule = "doph";
constexpr std::uint64_t kHashStream = 3;
constexpr std::uint64_t kSamplingStream = 4;

[[noreturn]] void fail(ErrorCode code, const std::string& what) { throw Error(kModule, code, what); }

}  // namespace

void DophConfig::validate() const {
  if (K < 1 || L < 1) fail(ErrorCode::Config, "K and L must be at least 1");
  const auto k = static_cast<std::uint64_t>(bins());
  if (k > (std::uint64_t{1} << 32)) fail(ErrorCode::Config, "K * L too large");
  const auto r = effective_range();
  if (r < k) fail(ErrorCode::Config, "range must be at least K * L");
  if (r % k != 0) fail(ErrorCode::Config, "range must be a multiple of K * L");
  if (r > (std::uint64_t{1} << 62)) fail(ErrorCode::Config, "range too large");
}

std::size_t OphState::occupied() const {
  return static_cast<std::size_t>(std::count_if(slots.begin(), slots.end(), [](auto v) { return v != kEmpty; }));
}

OphState oph_bin(std::span<const FeatureIndex> features, const DophConfig& config, HashCounters* counters) {
  config.validate();
  const auto range = config.effective_range();
  OphState state;
  state.width = config.bin_width();
  state.slots.assign(config.bins(), OphState::kEmpty);
  const auto key = derive_seed(config.seed, kHashStream);
  for (auto e : features) {
    const auto v = scale_to_range(mix64(key ^ e), range);
    const auto bin = v / state.width;
    const auto offset = v % state.width;
    auto& slot = state.slots[bin];
    if (offset < slot) slot = offset;
  }
  if (counters) {
    counters->element_hashes += features.size();
    counters->slot_visits += state.slots.size();
  }
  return state;
}

HashSignature densify(const OphState& state, HashCounters* counters) {
  const std::size_t k = state.slots.size();
  const auto first = std::find_if(state.slots.begin(), state.slots.end(), [](auto v) { return v != OphState::kEmpty; });
  if (first == state.slots.end()) fail(ErrorCode::Densification, "all bins are empty");

  // Walk leftwards from an occupied bin, carrying the nearest occupied bin to
  // the right and the distance to it.
  HashSignature out(k);
  const auto start = static_cast<std::size_t>(first - state.slots.begin());
  std::uint64_t carried = *first;
  std::uint64_t distance = 0;
  for (std::size_t step = 0; step < k; ++step) {
    const std::size_t j = (start + k - step) % k;
    if (state.slots[j] != OphState::kEmpty) {
      carried = state.slots[j];
      distance = 0;
      out[j] = carried;
    } else {
      ++distance;
      out[j] = carried + distance * state.width;
    }
  }
  if (counters) counters->slot_visits += k;
  return out;
}

HashSignature oph_signature(std::span<const FeatureIndex> features, const DophConfig& config,
                            HashCounters* counters) {
  if (features.empty()) fail(ErrorCode::Signature, "empty set has no signature");
  return densify(oph_bin(features, config, counters), counters);
}

HashSignature oph_signature(const ShingleSet& s, const DophConfig& config, HashCounters* counters) {
  if (s.empty()) fail(ErrorCode::Signature, "record " + std::to_string(s.record) + " has an empty shingle set");
  return oph_signature(std::span<const FeatureIndex>(s.features), config, counters);
}

void WeightedSamplingConfig::validate() const {
  if (!(normalizer > 0.0) || !std::isfinite(normalizer)) fail(ErrorCode::Config, "normalizer must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) fail(ErrorCode::Config, "delta must be positive");
  if (M < 1) fail(ErrorCode::Config, "M must be at least 1");
}

WeightedSamplingConfig WeightedSamplingConfig::for_vectors(std::span<const WeightedShingleVector> vectors,
                                                           std::uint64_t seed) {
  double largest = 0.0;
  for (const auto& v : vectors) largest = std::max(largest, v.max_weight());
  if (!(largest > 0.0)) fail(ErrorCode::Config, "all vectors are zero; no normalizer exists");
  WeightedSamplingConfig config;
  config.normalizer = largest;
  config.delta = largest;
  config.M = 1;
  config.seed = seed;
  return config;
}

ShingleSet sample_weighted(const WeightedShingleVector& x, const WeightedSamplingConfig& config,
                           HashCounters* counters) {
  config.validate();
  const auto key = derive_seed(config.seed, kSamplingStream);
  ShingleSet out;
  out.record = x.record;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double p = x.weights[i] / config.normalizer;
    if (p > 1.0 + 1e-12) {
      fail(ErrorCode::Config, "component " + std::to_string(x.weights[i]) + " exceeds normalizer " +
                                  std::to_string(config.normalizer));
    }
    const double u = unit_interval(mix64(key ^ x.features[i]));
    if (u < p) {
      out.features.push_back(x.features[i]);
      out.counts.push_back(1);
    }
  }
  if (counters) counters->sampling_draws += x.size();
  return out;
}

ShingleSet t_expand(const WeightedShingleVector& x, const WeightedSamplingConfig& config, std::size_t universe) {
  config.validate();
  const auto bits = static_cast<double>(config.M) * static_cast<double>(universe);
  if (bits > 1e6) fail(ErrorCode::Config, "M * D exceeds 10^6; use sample_weighted instead");
  ShingleSet out;
  out.record = x.record;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.features[i] >= universe) fail(ErrorCode::Config, "feature index outside universe");
    const double ratio = x.weights[i] / config.delta;
    const double units = std::round(ratio);
    if (std::abs(ratio - units) > 1e-9 * std::max(1.0, ratio)) {
      fail(ErrorCode::Resolution, "component " + std::to_string(x.weights[i]) + " is not a multiple of delta");
    }
    if (units > config.M) fail(ErrorCode::Resolution, "component exceeds M * delta");
    const auto base = static_cast<FeatureIndex>(x.features[i] * config.M);
    for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(units); ++j) {
      out.features.push_back(base + j);
      out.counts.push_back(1);
    }
  }
  return out;
}

HashSignature weighted_doph_signature(const WeightedShingleVector& x, const WeightedSamplingConfig& sampling,
                                      const DophConfig& doph, HashCounters* counters) {
  auto sample = sample_weighted(x, sampling, counters);
  if (sample.empty()) {
    fail(ErrorCode::Signature, "record " + std::to_string(x.record) + ": weighted sample is empty");
  }
  return oph_signature(std::span<const FeatureIndex>(sample.features), doph, counters);
}

// --- export -----------------------------------------------------------------

void write_signatures_csv(std::ostream& out, std::span<const std::string> ids,
                          std::span<const HashSignature> signatures) {
  if (ids.size() != signatures.size()) fail(ErrorCode::Config, "ids and signatures differ in length");
  for (std::size_t r = 0; r < ids.size(); ++r) {
    out << csv::escape(ids[r]);
    for (auto v : signatures[r]) out << ',' << v;
    out << '\n';
  }
}

namespace {

template <typename T>
void put(std::ostream& out, T value) {
  static_assert(std::endian::native == std::endian::little, "binary signature format assumes little endian");
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) fail(ErrorCode::Io, "truncated signature file");
  return value;
}

}  // namespace

void write_signatures_binary(std::ostream& out, std::span<const std::string> ids,
                             std::span<const HashSignature> signatures) {
  if (ids.size() != signatures.size()) fail(ErrorCode::Config, "ids and signatures differ in length");
  const std::uint64_t k = signatures.empty() ? 0 : signatures.front().size();
  out.write("PBSG", 4);
  put<std::uint32_t>(out, 1);
  put<std::uint64_t>(out, ids.size());
  put<std::uint64_t>(out, k);
  for (std::size_t r = 0; r < ids.size(); ++r) {
    if (signatures[r].size() != k) fail(ErrorCode::Config, "signatures differ in length");
    put<std::uint32_t>(out, static_cast<std::uint32_t>(ids[r].size()));
    out.write(ids[r].data(), static_cast<std::streamsize>(ids[r].size()));
    out.write(reinterpret_cast<const char*>(signatures[r].data()), static_cast<std::streamsize>(k * 8));
  }
}

SignatureFile read_signatures_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string_view(magic, 4) != "PBSG") fail(ErrorCode::Io, "not a signature file");
  if (get<std::uint32_t>(in) != 1) fail(ErrorCode::Io, "unsupported signature file version");
  const auto count = get<std::uint64_t>(in);
  const auto k = get<std::uint64_t>(in);
  SignatureFile file;
  for (std::uint64_t r = 0; r < count; ++r) {
    std::string id(get<std::uint32_t>(in), '\0');
    if (!in.read(id.data(), static_cast<std::streamsize>(id.size()))) fail(ErrorCode::Io, "truncated signature file");
    HashSignature sig(k);
    if (!in.read(reinterpret_cast<char*>(sig.data()), static_cast<std::streamsize>(k * 8))) {
      fail(ErrorCode::Io, "truncated signature file");
    }
    file.ids.push_back(std::move(id));
    file.signatures.push_back(std::move(sig));
  }
  return file;
}

}  // namespace pblock
