#pragma once

// Umbrella header: line spectral estimation from deterministic coprime
// sub-Nyquist samples via multitask variational Bayesian inference.
//
//   signal_model  — line spectra, sample synthesis, SNR bookkeeping
//   sampling      — coprime index sets, window validity, task slicing
//   sensing       — partial Fourier matrices and caching
//   rip_analysis  — empirical sub-Gram eigenvalue statistics
//   vb_estimator  — the multitask VB solver and spectrum extraction
//   baselines     — MUSIC and random-sampling CS comparators
//   experiments   — Monte-Carlo sweeps, success scoring, demo panels
//   serialize     — CSV / JSON interchange

#include "lse/rng.hpp"
#include "lse/signal_model.hpp"
#include "lse/sampling.hpp"
#include "lse/sensing.hpp"
#include "lse/rip_analysis.hpp"
#include "lse/vb_estimator.hpp"
#include "lse/baselines.hpp"
#include "lse/serialize.hpp"
#include "lse/experiments.hpp"
