#include "pnwave/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pnwave {

namespace {

// FFTW's planner is not re-entrant; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": length " + std::to_string(got) +
                                " does not match expected " + std::to_string(want));
  }
}

}  // namespace

Grid::Grid(double half_length, std::size_t n_points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw std::invalid_argument("L must be positive and finite");
  }
  if (n_points % 2 != 0) {
    throw std::invalid_argument("N must be even");
  }
  if (n_points < 8) {
    throw std::invalid_argument("N must be at least 8");
  }
  auto d = std::make_shared<Data>();
  d->half_length = half_length;
  d->h = 2.0 * half_length / static_cast<double>(n_points);
  d->x.resize(n_points);
  d->k.resize(n_points);
  const auto n = static_cast<std::ptrdiff_t>(n_points);
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    d->x[j] = -half_length + d->h * static_cast<double>(j);
    const std::ptrdiff_t js = j < n / 2 ? j : j - n;
    d->k[j] = std::numbers::pi * static_cast<double>(js) / half_length;
  }
  data_ = std::move(d);
}

std::ptrdiff_t Grid::signed_index(std::size_t j) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(size());
  const auto js = static_cast<std::ptrdiff_t>(j);
  return js < n / 2 ? js : js - n;
}

double Grid::max_abs_wavenumber() const noexcept {
  return std::numbers::pi * static_cast<double>(size() / 2) / half_length();
}

bool Grid::same_as(const Grid& other) const noexcept {
  return data_ == other.data_ ||
         (size() == other.size() && half_length() == other.half_length());
}

Grid make_grid(double half_length, std::size_t n_points) { return Grid(half_length, n_points); }

struct SpectralWorkspace::Impl {
  std::size_t n = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit Impl(std::size_t n_) : n(n_) {
    real = fftw_alloc_real(n);
    spec = fftw_alloc_complex(n / 2 + 1);
    if (real == nullptr || spec == nullptr) {
      release();
      throw std::bad_alloc();
    }
    std::lock_guard lock(planner_mutex());
    const int ni = static_cast<int>(n);
    // FFTW_ESTIMATE keeps plan selection deterministic across runs.
    r2c = fftw_plan_dft_r2c_1d(ni, real, spec, FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_1d(ni, spec, real, FFTW_ESTIMATE);
    if (r2c == nullptr || c2r == nullptr) {
      release();
      throw std::runtime_error("FFTW plan creation failed");
    }
  }
  ~Impl() { release(); }

  void release() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
    if (real) fftw_free(real);
    if (spec) fftw_free(spec);
    r2c = c2r = nullptr;
    real = nullptr;
    spec = nullptr;
  }
};

SpectralWorkspace::SpectralWorkspace(const Grid& g)
    : grid_(g), impl_(std::make_unique<Impl>(g.size())) {}
SpectralWorkspace::~SpectralWorkspace() = default;
SpectralWorkspace::SpectralWorkspace(SpectralWorkspace&&) noexcept = default;
SpectralWorkspace& SpectralWorkspace::operator=(SpectralWorkspace&&) noexcept = default;

void SpectralWorkspace::forward(std::span<const double> samples, std::span<Complex> spectrum) {
  check_length(samples.size(), impl_->n, "forward transform input");
  check_length(spectrum.size(), impl_->n / 2 + 1, "forward transform output");
  std::copy(samples.begin(), samples.end(), impl_->real);
  fftw_execute(impl_->r2c);
  const double h = grid_.spacing();
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    spectrum[j] = Complex(impl_->spec[j][0] * h, impl_->spec[j][1] * h);
  }
}

void SpectralWorkspace::inverse(std::span<const Complex> spectrum, std::span<double> samples) {
  check_length(spectrum.size(), impl_->n / 2 + 1, "inverse transform input");
  check_length(samples.size(), impl_->n, "inverse transform output");
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    impl_->spec[j][0] = spectrum[j].real();
    impl_->spec[j][1] = spectrum[j].imag();
  }
  fftw_execute(impl_->c2r);
  const double scale = 1.0 / (2.0 * grid_.half_length());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    samples[j] = impl_->real[j] * scale;
  }
}

std::vector<Complex> forward_transform(const Grid& g, std::span<const double> samples) {
  check_length(samples.size(), g.size(), "forward_transform");
  SpectralWorkspace ws(g);
  std::vector<Complex> half(g.spectrum_size());
  ws.forward(samples, half);
  const std::size_t n = g.size();
  std::vector<Complex> full(n);
  for (std::size_t j = 0; j < half.size(); ++j) full[j] = half[j];
  for (std::size_t j = half.size(); j < n; ++j) full[j] = std::conj(half[n - j]);
  return full;
}

std::vector<double> inverse_transform(const Grid& g, std::span<const Complex> spectrum) {
  check_length(spectrum.size(), g.size(), "inverse_transform");
  const std::size_t n = g.size();
  // Project onto conjugate-symmetric spectra: the real part of the synthesis.
  std::vector<Complex> half(g.spectrum_size());
  half[0] = Complex(spectrum[0].real(), 0.0);
  for (std::size_t j = 1; j < n / 2; ++j) {
    half[j] = 0.5 * (spectrum[j] + std::conj(spectrum[n - j]));
  }
  half[n / 2] = Complex(spectrum[n / 2].real(), 0.0);
  SpectralWorkspace ws(g);
  std::vector<double> out(n);
  ws.inverse(half, out);
  return out;
}

std::vector<double> abs_wavenumbers(const Grid& g) {
  std::vector<double> k(g.spectrum_size());
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = std::abs(g.wavenumber(j));
  return k;
}

void apply_symbol(SpectralWorkspace& ws, std::span<const double> symbol,
                  std::span<const double> in, std::span<double> out) {
  const Grid& g = ws.grid();
  check_length(symbol.size(), g.spectrum_size(), "symbol");
  std::vector<Complex> spec(g.spectrum_size());
  ws.forward(in, spec);
  for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= symbol[j];
  ws.inverse(spec, out);
}

TrigInterpolant::TrigInterpolant(const Grid& g, std::span<const double> samples)
    : grid_(g), spectrum_(g.spectrum_size()) {
  check_length(samples.size(), g.size(), "TrigInterpolant");
  SpectralWorkspace ws(g);
  ws.forward(samples, spectrum_);
}

double TrigInterpolant::value(double x) const {
  const std::size_t n = grid_.size();
  const double theta = std::numbers::pi * (x + grid_.half_length()) / grid_.half_length();
  const Complex step = std::polar(1.0, theta);
  Complex phase = step;
  double acc = spectrum_[0].real();
  for (std::size_t j = 1; j < n / 2; ++j) {
    acc += 2.0 * (spectrum_[j] * phase).real();
    phase *= step;
  }
  acc += spectrum_[n / 2].real() * std::cos(theta * static_cast<double>(n / 2));
  return acc / (2.0 * grid_.half_length());
}

double TrigInterpolant::derivative(double x) const {
  const std::size_t n = grid_.size();
  const double l = grid_.half_length();
  const double theta = std::numbers::pi * (x + l) / l;
  const Complex step = std::polar(1.0, theta);
  Complex phase = step;
  double acc = 0.0;
  // Nyquist mode dropped, matching the spectral derivative on the grid.
  for (std::size_t j = 1; j < n / 2; ++j) {
    acc -= 2.0 * grid_.wavenumber(j) * (spectrum_[j] * phase).imag();
    phase *= step;
  }
  return acc / (2.0 * l);
}

}  // namespace pnwave
