#pragma once

#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>

namespace translag {

enum class Compression { kAuto, kNone, kGzip };

/// Sequential reader of raw bytes. read() returns 0 only at end of input.
class ByteSource {
 public:
  virtual ~ByteSource() = default;
  virtual std::size_t read(std::span<char> buffer) = 0;
};

/// Reads from a caller-owned std::istream.
class StreamSource final : public ByteSource {
 public:
  explicit StreamSource(std::istream& in) : in_(in) {}
  std::size_t read(std::span<char> buffer) override;

 private:
  std::istream& in_;
};

/// Owns an open file.
class FileSource final : public ByteSource {
 public:
  explicit FileSource(const std::filesystem::path& path);
  ~FileSource() override;
  FileSource(const FileSource&) = delete;
  FileSource& operator=(const FileSource&) = delete;

  std::size_t read(std::span<char> buffer) override;

 private:
  std::FILE* file_ = nullptr;
  std::string path_;
};

/// Inflates gzip data (including concatenated members) from an upstream
/// source.
class GzipSource final : public ByteSource {
 public:
  explicit GzipSource(std::unique_ptr<ByteSource> upstream);
  ~GzipSource() override;
  GzipSource(const GzipSource&) = delete;
  GzipSource& operator=(const GzipSource&) = delete;

  std::size_t read(std::span<char> buffer) override;

 private:
  struct State;
  std::unique_ptr<ByteSource> upstream_;
  std::unique_ptr<State> state_;
};

/// Wraps `upstream` for decompression. kAuto sniffs the gzip magic bytes
/// (0x1f 0x8b); sniffed bytes are replayed, never lost.
std::unique_ptr<ByteSource> make_decoding_source(std::unique_ptr<ByteSource> upstream,
                                                 Compression compression);

std::unique_ptr<ByteSource> open_source(const std::filesystem::path& path,
                                        Compression compression = Compression::kAuto);

}  // namespace translag
