#ifndef CSIM_POLICIES_REGISTRY_HPP
#define CSIM_POLICIES_REGISTRY_HPP

#include <map>
#include <memory>

#include "csim/policies/lru.hpp"
#include "csim/policies/policy31.hpp"
#include "csim/policies/policy6x.hpp"
#include "csim/policies/rrip.hpp"

namespace csim {

// Verification fixture: an LRU policy that tries to bypass dirty writeback
// fills at the LLC, making the written-back data vanish. The write-bypass
// guard must trap this in every build mode.
class WbBypassAdversary final : public LruPolicy {
 public:
  explicit WbBypassAdversary(const PolicyContext& ctx) : LruPolicy(ctx) {}

  std::string_view name() const override { return "wb-bypass"; }

  int find_victim(std::span<const CacheLine> set, const PolicyEvent& e) override {
    if (e.kind == PolicyAccessKind::Writeback) return kBypass;
    return LruPolicy::find_victim(set, e);
  }
};

inline std::vector<std::string> policy_names() {
  return {"lru",      "random",   "srrip",    "drrip",    "ship",
          "rdp",      "policy31", "policy61", "policy62", "wb-bypass"};
}

inline std::vector<ParamSpec> policy_param_schema(const std::string& name) {
  if (name == "rdp" || name == "policy61") return rdp_schema();
  if (name == "policy31") return policy31_schema();
  if (name == "policy62") return policy62_schema();
  if (name == "lru" || name == "random" || name == "srrip" || name == "drrip" ||
      name == "ship" || name == "wb-bypass")
    return {};
  throw InvalidInput("unknown policy: " + name);
}

inline std::unique_ptr<ReplacementPolicy> make_policy(
    const std::string& name, const PolicyContext& ctx, const PolicyParams& params,
    const std::map<std::string, bool>& mech_flags) {
  if (name == "lru") return std::make_unique<LruPolicy>(ctx);
  if (name == "random") return std::make_unique<RandomPolicy>(ctx);
  if (name == "srrip") return std::make_unique<RripPolicy>(ctx, false);
  if (name == "drrip") return std::make_unique<RripPolicy>(ctx, true);
  if (name == "ship") return std::make_unique<ShipPolicy>(ctx);
  if (name == "rdp") return std::make_unique<RdpPolicy>(ctx, params, false);
  if (name == "policy61") return std::make_unique<RdpPolicy>(ctx, params, true);
  if (name == "policy31") {
    Policy31Mechanisms mech;
    auto flag = [&](const char* key, bool def) {
      auto it = mech_flags.find(key);
      return it == mech_flags.end() ? def : it->second;
    };
    mech.iqp = flag("iqp", true);
    mech.hawks_doves = flag("hawks_doves", true);
    mech.prefetch_aware = flag("prefetch_aware", true);
    mech.cpaat = flag("cpaat", true);
    return std::make_unique<Policy31>(ctx, params, mech);
  }
  if (name == "policy62") return std::make_unique<Policy62>(ctx, params);
  if (name == "wb-bypass") return std::make_unique<WbBypassAdversary>(ctx);
  throw InvalidInput("unknown policy: " + name);
}

inline PolicyParams make_policy_params(const std::string& policy_name,
                                       const std::map<std::string, double>& overrides = {}) {
  PolicyParams p(policy_param_schema(policy_name));
  for (const auto& [k, v] : overrides) p.set(k, v);
  return p;
}

}  // namespace csim

#endif
