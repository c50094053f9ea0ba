#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace pnwave {

using Complex = std::complex<double>;

/// Uniform periodic sampling of [-L, L).
///
/// Points are x_j = -L + j h with h = 2L/N. Wavenumbers are stored in FFT
/// order: entry j carries k_j = pi j'/L where j' is the signed index in
/// [-N/2, N/2), so k_0 = 0 and entry N/2 is the Nyquist wavenumber -pi N/(2L).
///
/// A Grid is immutable; copies share the sample tables.
class Grid {
 public:
  Grid(double half_length, std::size_t n_points);

  double half_length() const noexcept { return data_->half_length; }
  std::size_t size() const noexcept { return data_->x.size(); }
  double spacing() const noexcept { return data_->h; }
  double point(std::size_t j) const noexcept { return data_->x[j]; }
  std::span<const double> points() const noexcept { return data_->x; }

  /// Full-length wavenumber table in FFT order.
  std::span<const double> wavenumbers() const noexcept { return data_->k; }
  double wavenumber(std::size_t j) const noexcept { return data_->k[j]; }
  std::ptrdiff_t signed_index(std::size_t j) const noexcept;
  double max_abs_wavenumber() const noexcept;

  /// Length of the half spectrum used by real-input transforms (N/2 + 1).
  std::size_t spectrum_size() const noexcept { return size() / 2 + 1; }

  bool same_as(const Grid& other) const noexcept;

 private:
  struct Data {
    double half_length;
    double h;
    std::vector<double> x;
    std::vector<double> k;
  };
  std::shared_ptr<const Data> data_;
};

/// Validating factory: L > 0, N even, N >= 8.
Grid make_grid(double half_length, std::size_t n_points);

/// Discrete transform scaled by h, so that it approximates the continuous
/// Fourier transform and h sum |s|^2 = (1/2L) sum |s_hat|^2. Output has
/// length N in FFT order.
std::vector<Complex> forward_transform(const Grid& g, std::span<const double> samples);

/// Inverse of forward_transform. The imaginary part of the synthesis is
/// discarded; a conjugate-symmetric spectrum round-trips exactly.
std::vector<double> inverse_transform(const Grid& g, std::span<const Complex> spectrum);

/// Reusable real-to-complex transform workspace over a half spectrum of
/// length N/2 + 1, using the same h scaling as forward_transform.
///
/// Not thread-safe; give each concurrent run its own workspace.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const Grid& g);
  ~SpectralWorkspace();
  SpectralWorkspace(const SpectralWorkspace&) = delete;
  SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;
  SpectralWorkspace(SpectralWorkspace&&) noexcept;
  SpectralWorkspace& operator=(SpectralWorkspace&&) noexcept;

  const Grid& grid() const noexcept { return grid_; }

  /// Transforms `samples` into `spectrum` (length N/2 + 1).
  void forward(std::span<const double> samples, std::span<Complex> spectrum);
  /// Synthesizes `samples` from `spectrum` (length N/2 + 1).
  void inverse(std::span<const Complex> spectrum, std::span<double> samples);

 private:
  struct Impl;
  Grid grid_;
  std::unique_ptr<Impl> impl_;
};

/// Applies a real even symbol m(|k|) to samples: inverse(m * forward(u)).
/// `symbol` has length N/2 + 1 and is indexed like the half spectrum.
void apply_symbol(SpectralWorkspace& ws, std::span<const double> symbol,
                  std::span<const double> in, std::span<double> out);

/// Half-spectrum table of |k_j|.
std::vector<double> abs_wavenumbers(const Grid& g);

/// Periodic band-limited interpolant of grid samples, evaluable anywhere on
/// the real line (period 2L). The Nyquist mode is carried as a cosine.
class TrigInterpolant {
 public:
  TrigInterpolant(const Grid& g, std::span<const double> samples);

  double value(double x) const;
  double derivative(double x) const;

 private:
  Grid grid_;
  std::vector<Complex> spectrum_;
};

}  // namespace pnwave
