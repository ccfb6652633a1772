#pragma once

#include <string>
#include <vector>

#include "pkick/model.hpp"
#include "pkick/propagator.hpp"

namespace pkick {

/// Thermal-averaged excitation number of the system mode:
/// nu = sum_k N_k |C_0k|^2 over the bath modes.
double mean_vibrational_number(const AmplitudeRow& row, const OccupationVector& occ);

/// eta = 1 - |c00|^2 / (1 + 2*nu), clipped to [0,1]. Clipping beyond 1e-9 is
/// treated as an error rather than noise.
double fringe_visibility(Complex c00, double nu);

/// Markovian reference curves.
double markov_heating(double t, double gamma, double n_omega0);
double markov_visibility(double t, double gamma, double n_omega0);

enum class ThresholdBranch { Cutoff, Thermal };

struct ThresholdPrediction {
  double cycle_time = 0.0;  // s
  ThresholdBranch branch = ThresholdBranch::Cutoff;
  double n_omega0 = 0.0;
};

/// Cycle time below which decoherence suppression is expected:
/// min{ 2*pi/omega_c, 1/(gamma*(1 + 2*N(omega0))) }.
ThresholdPrediction predict_threshold(double temperature, const BathSpec& bath,
                                      const PhysicalConstants& constants = {});

struct WignerGridSpec {
  double re_min = -5.0;
  double re_max = 5.0;
  double im_min = -5.0;
  double im_max = 5.0;
  int resolution = 101;  // points per axis
};

struct WignerGrid {
  WignerGridSpec spec;
  MatrixXd values;  // values(i, j): i = Im index, j = Re index

  double re_at(int j) const;
  double im_at(int i) const;
};

/// Wigner function of the decohered cat: two displaced thermal Gaussians at
/// +-alpha0*c00 plus an interference ridge weighted by exp(-2|alpha0|^2 eta).
WignerGrid wigner_cat(const WignerGridSpec& spec, const CatStateSpec& cat, Complex c00,
                      double nu);

/// Cell-sum of the grid with measure dRe dIm; ~1 for a wide enough grid.
double wigner_integral(const WignerGrid& grid);

/// Stroboscopic (or free, arbitrary-time) series of the system observables.
struct ObservableSeries {
  std::vector<double> times;      // s
  std::vector<double> nu;         // mean vibrational number
  std::vector<double> eta;        // fringe visibility, [0,1]
  std::vector<double> c00_abs2;   // |C_00|^2
  std::string label;
  double temperature = 0.0;
};

ObservableSeries kicked_series(const BathSpec& bath, const KickSchedule& schedule,
                               const OccupationVector& occ,
                               CycleOrder order = CycleOrder::FreeThenKick);
ObservableSeries free_series(const BathSpec& bath, const std::vector<double>& times,
                             const OccupationVector& occ);
ObservableSeries markov_series(const std::vector<double>& times, double gamma,
                               double n_omega0, double temperature);

}  // namespace pkick
