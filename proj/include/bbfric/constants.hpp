#pragma once

namespace bbfric {

/// Physical constants used by every evaluator. Defaults are the exact / CODATA 2018
/// SI values; a complete replacement set may be supplied for reduced-unit runs.
class PhysicalConstants {
 public:
  static constexpr double kHbar = 1.054571817e-34;  // J s
  static constexpr double kBoltzmann = 1.380649e-23;  // J/K
  static constexpr double kLightSpeed = 299792458.0;  // m/s

  constexpr PhysicalConstants() = default;

  /// Throws InvalidParameter unless all three values are finite and positive.
  static PhysicalConstants custom(double hbar, double k_B, double c);

  constexpr double hbar() const { return hbar_; }
  constexpr double k_B() const { return k_B_; }
  constexpr double c() const { return c_; }

  /// k_B T / hbar in rad/s.
  double thermal_frequency(double temperature_K) const;

  friend bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;

 private:
  constexpr PhysicalConstants(double hbar, double k_B, double c) : hbar_(hbar), k_B_(k_B), c_(c) {}

  double hbar_ = kHbar;
  double k_B_ = kBoltzmann;
  double c_ = kLightSpeed;
};

inline constexpr PhysicalConstants kCodata{};

}  // namespace bbfric
