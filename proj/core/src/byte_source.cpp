#include "translag/byte_source.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstring>
#include <istream>
#include <vector>

#include "translag/error.hpp"

namespace translag {

std::size_t StreamSource::read(std::span<char> buffer) {
  if (buffer.empty() || !in_) return 0;
  in_.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  const auto got = static_cast<std::size_t>(in_.gcount());
  if (in_.bad()) throw IoError("stream read failed");
  return got;
}

FileSource::FileSource(const std::filesystem::path& path) : path_(path.string()) {
  file_ = std::fopen(path_.c_str(), "rb");
  if (file_ == nullptr) {
    throw IoError("cannot open " + path_ + ": " + std::strerror(errno));
  }
}

FileSource::~FileSource() {
  if (file_ != nullptr) std::fclose(file_);
}

std::size_t FileSource::read(std::span<char> buffer) {
  const std::size_t got = std::fread(buffer.data(), 1, buffer.size(), file_);
  if (got < buffer.size() && std::ferror(file_)) {
    throw IoError("read failed on " + path_);
  }
  return got;
}

struct GzipSource::State {
  z_stream zs{};
  std::array<char, 1 << 16> in{};
  bool upstream_done = false;
  bool finished = false;
};

GzipSource::GzipSource(std::unique_ptr<ByteSource> upstream)
    : upstream_(std::move(upstream)), state_(std::make_unique<State>()) {
  // 15 + 16: gzip wrapper only.
  if (inflateInit2(&state_->zs, 15 + 16) != Z_OK) {
    throw IoError("zlib inflateInit2 failed");
  }
}

GzipSource::~GzipSource() { inflateEnd(&state_->zs); }

std::size_t GzipSource::read(std::span<char> buffer) {
  State& s = *state_;
  if (s.finished || buffer.empty()) return 0;
  s.zs.next_out = reinterpret_cast<Bytef*>(buffer.data());
  s.zs.avail_out = static_cast<uInt>(buffer.size());

  while (s.zs.avail_out > 0) {
    if (s.zs.avail_in == 0 && !s.upstream_done) {
      const std::size_t got = upstream_->read(s.in);
      if (got == 0) {
        s.upstream_done = true;
      } else {
        s.zs.next_in = reinterpret_cast<Bytef*>(s.in.data());
        s.zs.avail_in = static_cast<uInt>(got);
      }
    }
    if (s.zs.avail_in == 0 && s.upstream_done) {
      // Stream ended: fine only at a member boundary.
      if (s.zs.total_in != 0 || s.zs.total_out != 0) {
        throw DataError("truncated gzip stream");
      }
      s.finished = true;
      break;
    }
    const int rc = inflate(&s.zs, Z_NO_FLUSH);
    if (rc == Z_STREAM_END) {
      // Concatenated members: reset and keep going if more input follows.
      if (inflateReset(&s.zs) != Z_OK) throw IoError("zlib inflateReset failed");
      continue;
    }
    if (rc == Z_BUF_ERROR) continue;
    if (rc != Z_OK) {
      throw DataError(std::string("gzip decode error: ") +
                      (s.zs.msg != nullptr ? s.zs.msg : "unknown"));
    }
  }
  return buffer.size() - s.zs.avail_out;
}

namespace {

// Replays a handful of already-consumed bytes before delegating upstream.
class PrefixedSource final : public ByteSource {
 public:
  PrefixedSource(std::vector<char> prefix, std::unique_ptr<ByteSource> upstream)
      : prefix_(std::move(prefix)), upstream_(std::move(upstream)) {}

  std::size_t read(std::span<char> buffer) override {
    if (pos_ < prefix_.size()) {
      const std::size_t n = std::min(buffer.size(), prefix_.size() - pos_);
      std::copy_n(prefix_.begin() + static_cast<std::ptrdiff_t>(pos_), n, buffer.begin());
      pos_ += n;
      return n;
    }
    return upstream_->read(buffer);
  }

 private:
  std::vector<char> prefix_;
  std::size_t pos_ = 0;
  std::unique_ptr<ByteSource> upstream_;
};

}  // namespace

std::unique_ptr<ByteSource> make_decoding_source(std::unique_ptr<ByteSource> upstream,
                                                 Compression compression) {
  if (compression == Compression::kGzip) {
    return std::make_unique<GzipSource>(std::move(upstream));
  }
  if (compression == Compression::kNone) return upstream;

  std::vector<char> head(2);
  std::size_t have = 0;
  while (have < head.size()) {
    const std::size_t got = upstream->read(std::span(head).subspan(have));
    if (got == 0) break;
    have += got;
  }
  head.resize(have);
  const bool gzip = have == 2 && static_cast<unsigned char>(head[0]) == 0x1f &&
                    static_cast<unsigned char>(head[1]) == 0x8b;
  auto replay = std::make_unique<PrefixedSource>(std::move(head), std::move(upstream));
  if (gzip) return std::make_unique<GzipSource>(std::move(replay));
  return replay;
}

std::unique_ptr<ByteSource> open_source(const std::filesystem::path& path,
                                        Compression compression) {
  return make_decoding_source(std::make_unique<FileSource>(path), compression);
}

}  // namespace translag
