#ifndef CSIM_CHECKPOINT_HPP
#define CSIM_CHECKPOINT_HPP

#include <cstdio>
#include <fstream>
#include <string>

#include "csim/simulator.hpp"

namespace csim {

// Checkpoint file: "AACP" | version u32 | fingerprint u64 | payload size u64
// | payload | fnv1a-64 checksum. Restoring into a simulation built from the
// same inputs and continuing is bit-identical to an uninterrupted run.
inline constexpr char kCheckpointMagic[4] = {'A', 'A', 'C', 'P'};
inline constexpr uint32_t kCheckpointVersion = 1;

inline void Simulation::save_state(ByteWriter& w) const {
  w.u64(base_cycles_);
  w.u64(penalty_cycles_);
  w.u64(post_instr_);
  w.u64(post_penalty_cycles_);
  w.u64(slots_);
  w.i64(dram_last_start_);
  w.u64(guard_.writeback_bypass_attempts);
  w.u64(guard_.dirty_evictions);
  w.u64(guard_.dram_writes);
  for (const CoreState& c : cores_) {
    c.l1i.save(w);
    c.l1d.save(w);
    c.l2.save(w);
    c.stride.save(w);
    w.u64(c.path_hist);
    w.u64(c.cursor);
    w.u64(c.retired_instr);
    w.u64(c.post_instr);
    w.u64(c.post_penalty);
    for (const LevelStats* s : {&c.stat_l1i, &c.stat_l1d, &c.stat_l2, &c.stat_llc}) {
      w.u64(s->hits);
      w.u64(s->misses);
    }
    w.u64(c.dram_reads);
    w.u64(c.dram_writes);
    w.u64(c.llc_fills);
    w.u64(c.llc_prefetch_fills);
    w.u64(c.llc_wb_fills);
    w.u64(c.llc_bypasses);
    w.u64(c.llc_dirty_evictions);
  }
  llc_.save(w);
  ByteWriter pol;
  policy_->save(pol);
  w.str(pol.data());
}

inline void Simulation::load_state(ByteReader& r) {
  base_cycles_ = r.u64();
  penalty_cycles_ = r.u64();
  post_instr_ = r.u64();
  post_penalty_cycles_ = r.u64();
  slots_ = r.u64();
  dram_last_start_ = r.i64();
  guard_.writeback_bypass_attempts = r.u64();
  guard_.dirty_evictions = r.u64();
  guard_.dram_writes = r.u64();
  for (CoreState& c : cores_) {
    c.l1i.load(r);
    c.l1d.load(r);
    c.l2.load(r);
    c.stride.load(r);
    c.path_hist = r.u64();
    c.cursor = r.u64();
    c.retired_instr = r.u64();
    c.post_instr = r.u64();
    c.post_penalty = r.u64();
    for (LevelStats* s : {&c.stat_l1i, &c.stat_l1d, &c.stat_l2, &c.stat_llc}) {
      s->hits = r.u64();
      s->misses = r.u64();
    }
    c.dram_reads = r.u64();
    c.dram_writes = r.u64();
    c.llc_fills = r.u64();
    c.llc_prefetch_fills = r.u64();
    c.llc_wb_fills = r.u64();
    c.llc_bypasses = r.u64();
    c.llc_dirty_evictions = r.u64();
  }
  llc_.load(r);
  std::string pol = r.str();
  ByteReader pr(pol);
  policy_->load(pr);
}

inline std::string encode_checkpoint(const Simulation& sim) {
  ByteWriter payload;
  sim.save_state(payload);
  ByteWriter out;
  out.bytes(kCheckpointMagic, 4);
  out.u32(kCheckpointVersion);
  out.u64(sim.fingerprint());
  out.str(payload.data());
  out.u64(fnv1a(payload.data().data(), payload.data().size()));
  return out.take();
}

inline void decode_checkpoint(const std::string& bytes, Simulation& sim) {
  try {
    ByteReader r(bytes);
    char magic[4];
    for (char& m : magic) m = static_cast<char>(r.u8());
    if (std::memcmp(magic, kCheckpointMagic, 4) != 0)
      throw CheckpointError(CheckpointError::Kind::Corrupt, "bad checkpoint magic");
    uint32_t version = r.u32();
    if (version != kCheckpointVersion)
      throw CheckpointError(CheckpointError::Kind::VersionMismatch,
                            "checkpoint version " + std::to_string(version) +
                                ", expected " + std::to_string(kCheckpointVersion));
    uint64_t fp = r.u64();
    if (fp != sim.fingerprint())
      throw CheckpointError(CheckpointError::Kind::FingerprintMismatch,
                            "checkpoint was taken from a different run setup");
    std::string payload = r.str();
    uint64_t checksum = r.u64();
    if (checksum != fnv1a(payload.data(), payload.size()))
      throw CheckpointError(CheckpointError::Kind::Corrupt, "checkpoint checksum mismatch");
    ByteReader pr(payload);
    sim.load_state(pr);
  } catch (const ByteReader::Underflow&) {
    throw CheckpointError(CheckpointError::Kind::Corrupt, "checkpoint truncated");
  }
}

inline void write_checkpoint_file(const Simulation& sim, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint: " + tmp);
    std::string bytes = encode_checkpoint(sim);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot move checkpoint into place: " + path);
}

inline void restore_checkpoint_file(Simulation& sim, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  decode_checkpoint(bytes, sim);
}

}  // namespace csim

#endif
