#ifndef CSIM_BINIO_HPP
#define CSIM_BINIO_HPP

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace csim {

// Append-only little-endian byte buffer used for checkpoints and policy
// state blobs. All widths explicit; no padding; platform-independent.
class ByteWriter {
 public:
  void u8(uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u16(uint16_t v) { emit(v, 2); }
  void u32(uint32_t v) { emit(v, 4); }
  void u64(uint64_t v) { emit(v, 8); }
  void i64(int64_t v) { emit(static_cast<uint64_t>(v), 8); }
  void f64(double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    emit(bits, 8);
  }
  void boolean(bool v) { u8(v ? 1 : 0); }
  void bytes(const void* p, size_t n) {
    buf_.append(static_cast<const char*>(p), n);
  }
  void str(const std::string& s) {
    u64(s.size());
    buf_.append(s);
  }

  const std::string& data() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  void emit(uint64_t v, int n) {
    for (int i = 0; i < n; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string buf_;
};

class ByteReader {
 public:
  ByteReader(const void* p, size_t n)
      : p_(static_cast<const unsigned char*>(p)), n_(n) {}
  explicit ByteReader(const std::string& s) : ByteReader(s.data(), s.size()) {}

  bool exhausted() const { return pos_ >= n_; }
  size_t remaining() const { return n_ - pos_; }

  uint8_t u8() { return static_cast<uint8_t>(take(1)); }
  uint16_t u16() { return static_cast<uint16_t>(take(2)); }
  uint32_t u32() { return static_cast<uint32_t>(take(4)); }
  uint64_t u64() { return take(8); }
  int64_t i64() { return static_cast<int64_t>(take(8)); }
  double f64() {
    uint64_t bits = take(8);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  bool boolean() { return u8() != 0; }
  std::string str() {
    uint64_t n = u64();
    check(n);
    std::string s(reinterpret_cast<const char*>(p_ + pos_), n);
    pos_ += n;
    return s;
  }

  struct Underflow {};

 private:
  uint64_t take(int n) {
    check(n);
    uint64_t v = 0;
    for (int i = n - 1; i >= 0; --i) v = (v << 8) | p_[pos_ + i];
    pos_ += n;
    return v;
  }
  void check(uint64_t n) const {
    if (pos_ + n > n_) throw Underflow{};
  }

  const unsigned char* p_;
  size_t n_;
  size_t pos_ = 0;
};

}  // namespace csim

#endif
