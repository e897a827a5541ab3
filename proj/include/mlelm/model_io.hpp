#pragma once

#include "mlelm/elm.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace mlelm {

/**
 * Binary model layout, all integers and floats little-endian:
 *
 *   "MLELM1"                               6-byte magic
 *   u64 features, u64 hidden, u64 labels
 *   u32 activation id, f64 threshold, u8 threshold method, u8 top-1 fallback
 *   u64 seed, f64 ridge used, u8 ridge was explicit
 *   f64 x4 weight range / bias range, u8 threshold was fixed
 *   features x (f64 shift, f64 scale)       normalization
 *   labels x (u32 length, bytes)            label names
 *   hidden*features f64                     input weights, row-major
 *   hidden f64                              biases
 *   hidden*labels f64                       output weights, row-major
 *   u64 FNV-1a of everything above
 */
inline constexpr std::string_view model_magic = "MLELM1";

[[nodiscard]] std::vector<std::uint8_t> serialize_model(const ElmModel &model);
/// Throws format_error on a bad magic, truncated data, checksum mismatch or inconsistent dimensions.
[[nodiscard]] ElmModel deserialize_model(std::span<const std::uint8_t> bytes);

void save_model(const ElmModel &model, const std::filesystem::path &path);
[[nodiscard]] ElmModel load_model(const std::filesystem::path &path);

[[nodiscard]] std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

}  // namespace mlelm
