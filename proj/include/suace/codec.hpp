#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "suace/image.hpp"

namespace suace {

// --- PGM (binary, P5, 8-bit) ---
// Readers accept any whitespace/comment layout the format allows; the writer
// always emits the canonical "P5\n<w> <h>\n255\n" header.
GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);
GrayImage load_pgm(const std::string& path);
void save_pgm(const std::string& path, const GrayImage& img);

// --- PNG (8-bit grayscale; color inputs are converted with BT.601 luma) ---
GrayImage decode_png(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_png(const GrayImage& img);
GrayImage load_png(const std::string& path);
void save_png(const std::string& path, const GrayImage& img);

// --- Path-level dispatch ---
// Loading sniffs the leading bytes (PNG signature / "P5"), so extension lies
// are harmless on input. Saving picks the codec from the extension:
// .png -> PNG, anything else -> PGM.
GrayImage load_image(const std::string& path);
void save_image(const std::string& path, const GrayImage& img);

// Shared helpers for tools that touch raw files.
std::vector<std::uint8_t> read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);

} // namespace suace
