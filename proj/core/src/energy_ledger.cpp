#include "ruenergy/energy_ledger.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ruenergy/errors.hpp"
#include "ruenergy/number_format.hpp"

namespace ruenergy {

EnergySource make_energy_source(double initial_j, double voltage_v) {
  if (!(initial_j >= 0.0) || !std::isfinite(initial_j)) {
    throw InvalidArgument("energy source capacity must be finite and >= 0 J");
  }
  if (!(voltage_v > 0.0) || !std::isfinite(voltage_v)) {
    throw InvalidArgument("energy source voltage must be > 0 V");
  }
  return {initial_j, initial_j, voltage_v, initial_j == 0.0};
}

void check_source(const EnergySource& s) {
  if (!(s.initial_j >= 0.0) || !std::isfinite(s.initial_j)) {
    throw ConfigError("initial_j must be finite and >= 0");
  }
  if (!(s.remaining_j >= 0.0 && s.remaining_j <= s.initial_j)) {
    throw ConfigError("remaining_j must lie in [0, initial_j]");
  }
  if (!(s.voltage_v > 0.0)) throw ConfigError("voltage_v must be > 0");
  if (s.depleted != (s.remaining_j == 0.0)) {
    throw ConfigError("depleted must be true exactly when remaining_j is 0");
  }
}

DeviceEnergyModel set_current(DeviceEnergyModel model, double amps) {
  if (!(amps >= 0.0) || !std::isfinite(amps)) {
    throw InvalidArgument("device current must be finite and >= 0 A, got " + format_number(amps));
  }
  model.current_a = amps;
  return model;
}

AdvanceReport advance(EnergySource& source, std::span<const DeviceEnergyModel> models,
                      const Harvester* harvester, double dt_s) {
  if (!(dt_s > 0.0) || !std::isfinite(dt_s)) {
    throw InvalidArgument("advance: dt must be > 0 s, got " + format_number(dt_s));
  }
  double load_w = 0.0;
  for (const auto& m : models) load_w += source.voltage_v * m.current_a;
  const double harvest_w = harvester ? harvester->harvest_power_w : 0.0;
  const double net_w = load_w - harvest_w;

  AdvanceReport report;
  report.dt_s = dt_s;
  report.remaining_before_j = source.remaining_j;
  report.demanded_j = load_w * dt_s;

  const double next = source.remaining_j - net_w * dt_s;
  if (next <= 0.0 && net_w > 0.0) {
    if (source.remaining_j > 0.0) report.depleted_after_s = source.remaining_j / net_w;
    source.remaining_j = 0.0;
  } else {
    source.remaining_j = std::min(next, source.initial_j);
  }
  source.depleted = source.remaining_j == 0.0;
  report.remaining_after_j = source.remaining_j;
  return report;
}

double consumed(const EnergySource& source) { return source.initial_j - source.remaining_j; }

double energy_efficiency(double total_bits, double consumed_j) {
  if (!(total_bits >= 0.0)) throw InvalidArgument("total bits must be >= 0");
  if (!(consumed_j > 0.0)) {
    throw UndefinedEfficiency("energy efficiency is undefined when no energy was consumed");
  }
  return (total_bits / 1000.0) / consumed_j;
}

EnergyLedger::EnergyLedger(double initial_j, double voltage_v)
    : source_(make_energy_source(initial_j, voltage_v)) {}

EnergyLedger::DeviceId EnergyLedger::attach_device(double current_a) {
  devices_.push_back(ruenergy::set_current({}, current_a));
  return devices_.size() - 1;
}

void EnergyLedger::set_current(DeviceId device, double amps) {
  if (device >= devices_.size()) throw InvalidArgument("unknown device id");
  devices_[device] = ruenergy::set_current(devices_[device], amps);
}

double EnergyLedger::current(DeviceId device) const {
  if (device >= devices_.size()) throw InvalidArgument("unknown device id");
  return devices_[device].current_a;
}

double EnergyLedger::total_current() const {
  double sum = 0.0;
  for (const auto& d : devices_) sum += d.current_a;
  return sum;
}

void EnergyLedger::set_harvester(std::optional<Harvester> harvester) {
  if (harvester && !(harvester->harvest_power_w >= 0.0)) {
    throw InvalidArgument("harvest power must be >= 0 W");
  }
  harvester_ = harvester;
}

AdvanceReport EnergyLedger::advance(double dt_s) {
  if (!(dt_s > 0.0) || !std::isfinite(dt_s)) {
    throw InvalidArgument("advance: dt must be > 0 s, got " + format_number(dt_s));
  }
  double load_w = 0.0;
  for (const auto& d : devices_) load_w += source_.voltage_v * d.current_a;
  const double net_w = load_w - (harvester_ ? harvester_->harvest_power_w : 0.0);

  AdvanceReport r;
  r.dt_s = dt_s;
  r.remaining_before_j = source_.remaining_j;
  r.demanded_j = load_w * dt_s;

  // Neumaier summation of the net drain.
  const double x = net_w * dt_s;
  const double t = drawn_j_ + x;
  drawn_comp_j_ += std::abs(drawn_j_) >= std::abs(x) ? (drawn_j_ - t) + x : (x - t) + drawn_j_;
  drawn_j_ = t;

  const double initial = source_.initial_j;
  if (net_w > 0.0 && consumed_j() >= initial) {
    if (source_.remaining_j > 0.0) r.depleted_after_s = source_.remaining_j / net_w;
    drawn_j_ = initial;
    drawn_comp_j_ = 0.0;
  } else if (consumed_j() < 0.0) {
    drawn_j_ = 0.0;
    drawn_comp_j_ = 0.0;
  }
  source_.remaining_j = initial - consumed_j();
  source_.depleted = source_.remaining_j == 0.0;
  r.remaining_after_j = source_.remaining_j;

  if (r.depleted_after_s && !first_depletion_s_) first_depletion_s_ = now_s_ + *r.depleted_after_s;
  now_s_ += dt_s;
  return r;
}

}  // namespace ruenergy
