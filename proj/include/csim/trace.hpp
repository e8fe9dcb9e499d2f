#ifndef CSIM_TRACE_HPP
#define CSIM_TRACE_HPP

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "csim/errors.hpp"

namespace csim {

enum class AccessKind : uint8_t { Load = 0, Store = 1, Ifetch = 2 };

// One trace record: a memory instruction plus the number of non-memory
// instructions retired immediately before it (saturating at 255).
struct MemoryAccess {
  uint64_t pc = 0;
  uint64_t addr = 0;
  AccessKind kind = AccessKind::Load;
  uint8_t nonmem_gap = 0;

  bool operator==(const MemoryAccess&) const = default;
};

// Binary trace layout, little-endian:
//   header: magic "AATR" (4) | version u32 (4) | record_count u64 (8)
//   record: pc u64 | addr u64 | kind u8 | nonmem_gap u8 | pad[6] = 0
// 16-byte header, 24 bytes per record.
struct TraceHeader {
  static constexpr char kMagic[4] = {'A', 'A', 'T', 'R'};
  static constexpr uint32_t kVersion = 1;
  static constexpr size_t kHeaderBytes = 16;
  static constexpr size_t kRecordBytes = 24;

  uint32_t version = kVersion;
  uint64_t record_count = 0;
};

namespace detail {

inline void put_u32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
inline void put_u64(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
inline uint32_t get_u32(const unsigned char* p) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
inline uint64_t get_u64(const unsigned char* p) {
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace detail

inline std::string encode_trace(const std::vector<MemoryAccess>& records) {
  std::string out;
  out.reserve(TraceHeader::kHeaderBytes + TraceHeader::kRecordBytes * records.size());
  out.append(TraceHeader::kMagic, 4);
  detail::put_u32(out, TraceHeader::kVersion);
  detail::put_u64(out, records.size());
  for (const MemoryAccess& r : records) {
    detail::put_u64(out, r.pc);
    detail::put_u64(out, r.addr);
    out.push_back(static_cast<char>(r.kind));
    out.push_back(static_cast<char>(r.nonmem_gap));
    out.append(6, '\0');
  }
  return out;
}

inline TraceHeader decode_trace_header(const unsigned char* p, size_t n) {
  if (n < TraceHeader::kHeaderBytes)
    throw TraceError(TraceError::Kind::Truncated, "trace shorter than header");
  if (std::memcmp(p, TraceHeader::kMagic, 4) != 0)
    throw TraceError(TraceError::Kind::BadMagic, "bad trace magic");
  TraceHeader h;
  h.version = detail::get_u32(p + 4);
  if (h.version != TraceHeader::kVersion)
    throw TraceError(TraceError::Kind::BadVersion,
                     "unsupported trace version " + std::to_string(h.version));
  h.record_count = detail::get_u64(p + 8);
  return h;
}

inline MemoryAccess decode_record(const unsigned char* p) {
  MemoryAccess r;
  r.pc = detail::get_u64(p);
  r.addr = detail::get_u64(p + 8);
  uint8_t k = p[16];
  if (k > 2)
    throw TraceError(TraceError::Kind::BadKind,
                     "bad access kind byte " + std::to_string(int(k)));
  r.kind = static_cast<AccessKind>(k);
  r.nonmem_gap = p[17];
  return r;
}

inline std::vector<MemoryAccess> decode_trace(const std::string& bytes) {
  const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
  TraceHeader h = decode_trace_header(p, bytes.size());
  size_t expect = TraceHeader::kHeaderBytes + TraceHeader::kRecordBytes * h.record_count;
  if (bytes.size() != expect)
    throw TraceError(TraceError::Kind::Truncated,
                     "trace is " + std::to_string(bytes.size()) + " bytes, header implies " +
                         std::to_string(expect));
  std::vector<MemoryAccess> out;
  out.reserve(h.record_count);
  p += TraceHeader::kHeaderBytes;
  for (uint64_t i = 0; i < h.record_count; ++i, p += TraceHeader::kRecordBytes)
    out.push_back(decode_record(p));
  return out;
}

// Streaming decoder: constant memory per record. This is also the extension
// point for foreign trace formats — anything that can produce MemoryAccess
// records in order can feed the simulator.
class TraceSource {
 public:
  virtual ~TraceSource() = default;
  virtual bool next(MemoryAccess& out) = 0;
  virtual uint64_t record_count() const = 0;
};

class StreamTraceReader final : public TraceSource {
 public:
  explicit StreamTraceReader(std::istream& in) : in_(in) {
    unsigned char hdr[TraceHeader::kHeaderBytes];
    in_.read(reinterpret_cast<char*>(hdr), sizeof hdr);
    if (in_.gcount() != static_cast<std::streamsize>(sizeof hdr))
      throw TraceError(TraceError::Kind::Truncated, "trace shorter than header");
    header_ = decode_trace_header(hdr, sizeof hdr);
  }

  bool next(MemoryAccess& out) override {
    if (read_ >= header_.record_count) return false;
    unsigned char rec[TraceHeader::kRecordBytes];
    in_.read(reinterpret_cast<char*>(rec), sizeof rec);
    if (in_.gcount() != static_cast<std::streamsize>(sizeof rec))
      throw TraceError(TraceError::Kind::Truncated, "trace record truncated");
    out = decode_record(rec);
    ++read_;
    return true;
  }

  uint64_t record_count() const override { return header_.record_count; }

 private:
  std::istream& in_;
  TraceHeader header_;
  uint64_t read_ = 0;
};

class VectorTraceSource final : public TraceSource {
 public:
  explicit VectorTraceSource(const std::vector<MemoryAccess>* recs) : recs_(recs) {}
  bool next(MemoryAccess& out) override {
    if (pos_ >= recs_->size()) return false;
    out = (*recs_)[pos_++];
    return true;
  }
  uint64_t record_count() const override { return recs_->size(); }

 private:
  const std::vector<MemoryAccess>* recs_;
  size_t pos_ = 0;
};

}  // namespace csim

#endif
