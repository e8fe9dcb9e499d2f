#ifndef CSIM_PARAMS_HPP
#define CSIM_PARAMS_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "csim/errors.hpp"
#include "csim/rng.hpp"

namespace csim {

// A named, bounded runtime parameter. Integer params move in unit steps or
// geometric jumps under mutation; real params get Gaussian noise.
struct ParamSpec {
  std::string name;
  bool is_integer = true;
  double def = 0;
  double min = 0;
  double max = 0;
};

// A concrete value vector for a schema. Values are stored as doubles; integer
// params always hold exact integral values.
class PolicyParams {
 public:
  PolicyParams() = default;
  explicit PolicyParams(std::vector<ParamSpec> schema) : schema_(std::move(schema)) {
    for (const ParamSpec& s : schema_) values_.push_back(s.def);
  }

  const std::vector<ParamSpec>& schema() const { return schema_; }
  size_t size() const { return schema_.size(); }

  bool has(const std::string& name) const { return index_of(name) >= 0; }

  double get(const std::string& name) const {
    int i = index_of(name);
    if (i < 0) throw Error("unknown parameter: " + name);
    return values_[i];
  }
  int64_t get_int(const std::string& name) const {
    return static_cast<int64_t>(std::llround(get(name)));
  }

  void set(const std::string& name, double v) {
    int i = index_of(name);
    if (i < 0) throw Error("unknown parameter: " + name);
    const ParamSpec& s = schema_[i];
    if (s.is_integer) v = std::llround(v);
    if (v < s.min || v > s.max)
      throw Error("parameter " + name + "=" + std::to_string(v) + " out of bounds [" +
                  std::to_string(s.min) + "," + std::to_string(s.max) + "]");
    values_[i] = v;
  }

  double at(size_t i) const { return values_[i]; }
  void set_at(size_t i, double v) {
    const ParamSpec& s = schema_[i];
    if (s.is_integer) v = std::llround(v);
    if (v < s.min || v > s.max) throw Error("parameter " + s.name + " out of bounds");
    values_[i] = v;
  }

  bool in_bounds(size_t i, double v) const {
    return v >= schema_[i].min && v <= schema_[i].max;
  }

  // Key-value text form, one `param.<NAME>=<value>` per line; the on-disk
  // format for tuned parameter files.
  std::string to_text() const {
    std::string out;
    char buf[64];
    for (size_t i = 0; i < schema_.size(); ++i) {
      if (schema_[i].is_integer)
        snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(values_[i])));
      else
        snprintf(buf, sizeof buf, "%.17g", values_[i]);
      out += "param." + schema_[i].name + "=" + buf + "\n";
    }
    return out;
  }

  uint64_t content_hash() const {
    std::string t = to_text();
    return fnv1a(t.data(), t.size());
  }

  bool operator==(const PolicyParams& o) const {
    if (values_.size() != o.values_.size()) return false;
    for (size_t i = 0; i < values_.size(); ++i)
      if (values_[i] != o.values_[i]) return false;
    return true;
  }

 private:
  int index_of(const std::string& name) const {
    for (size_t i = 0; i < schema_.size(); ++i)
      if (schema_[i].name == name) return static_cast<int>(i);
    return -1;
  }

  std::vector<ParamSpec> schema_;
  std::vector<double> values_;
};

}  // namespace csim

#endif
