#pragma once

// Finite energy source with attached constant-current device models and an
// optional constant-power harvester. Consumption is integrated exactly over
// piecewise-constant current: between two advance() calls every rate is fixed.
//
// A ledger is single-owner state; use one instance per RU (and per sweep point).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ruenergy {

struct EnergySource {
  double initial_j = 0.0;
  double remaining_j = 0.0;
  double voltage_v = 0.0;
  bool depleted = false;

  friend bool operator==(const EnergySource&, const EnergySource&) = default;
};

/// Builds a full source; throws InvalidArgument on negative capacity or non-positive voltage.
EnergySource make_energy_source(double initial_j, double voltage_v);

/// Throws ConfigError if the invariants 0 <= remaining <= initial, voltage > 0 and
/// depleted <=> remaining == 0 do not hold (e.g. for a deserialized snapshot).
void check_source(const EnergySource& source);

struct DeviceEnergyModel {
  double current_a = 0.0;
};

/// Returns the model drawing `amps` from now on. Throws InvalidArgument for amps < 0.
DeviceEnergyModel set_current(DeviceEnergyModel model, double amps);

struct Harvester {
  double harvest_power_w = 0.0;
};

struct AdvanceReport {
  double dt_s = 0.0;
  double remaining_before_j = 0.0;
  double remaining_after_j = 0.0;
  /// Energy the loads asked for, V * sum(I) * dt, regardless of what was available.
  double demanded_j = 0.0;
  /// Offset into the step at which the source ran dry, if it did during this step.
  std::optional<double> depleted_after_s;
};

/// Integrates one step of length dt_s (> 0). Remaining energy moves by
/// (harvest - V * sum(I)) * dt and is clamped to [0, initial]. When the lower clamp
/// engages the depletion instant is interpolated linearly inside the step; a source
/// sitting at zero supplies nothing, so its loads effectively draw zero.
AdvanceReport advance(EnergySource& source, std::span<const DeviceEnergyModel> models,
                      const Harvester* harvester, double dt_s);

/// E = E_initial - E_remaining.
double consumed(const EnergySource& source);

/// Kilobits per joule: (total_bits / 1000) / consumed_j. Throws UndefinedEfficiency when
/// consumed_j <= 0 and InvalidArgument when total_bits < 0.
double energy_efficiency(double total_bits, double consumed_j);

/// An EnergySource plus its bound device models and clock. Net drain is accumulated
/// with compensated summation, so consumed_j() keeps full precision even when the
/// capacity is many orders of magnitude above what was drawn.
class EnergyLedger {
 public:
  using DeviceId = std::size_t;

  EnergyLedger(double initial_j, double voltage_v);

  DeviceId attach_device(double current_a = 0.0);
  void set_current(DeviceId device, double amps);
  double current(DeviceId device) const;
  double total_current() const;

  void set_harvester(std::optional<Harvester> harvester);

  AdvanceReport advance(double dt_s);

  double now_s() const { return now_s_; }
  double consumed_j() const { return drawn_j_ + drawn_comp_j_; }
  double remaining_j() const { return source_.remaining_j; }
  bool depleted() const { return source_.depleted; }
  /// Absolute ledger time at which the source first ran dry.
  std::optional<double> first_depletion_s() const { return first_depletion_s_; }
  const EnergySource& source() const { return source_; }

 private:
  EnergySource source_;
  std::vector<DeviceEnergyModel> devices_;
  std::optional<Harvester> harvester_;
  double drawn_j_ = 0.0;
  double drawn_comp_j_ = 0.0;
  double now_s_ = 0.0;
  std::optional<double> first_depletion_s_;
};

}  // namespace ruenergy
