//! Seeded synthetic data: the sine/cosine benchmark set and uniform random
//! event series. All randomness flows from an explicit seed through a fixed
//! ChaCha stream, so outputs are reproducible across platforms and runs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::series::{EventSeries, TimeSeries};

/// Generate `count_each` sine series followed by `count_each` cosine series,
/// each of `length` samples over one full period (`sin(2*pi*t/length)` for
/// `t = 1..=length`) plus i.i.d. Gaussian noise of standard deviation
/// `noise_sd`. Ids are `sin_1..` and `cos_1..`.
pub fn dataset_sincos_generate(
    count_each: usize,
    length: usize,
    noise_sd: f64,
    seed: u64,
) -> Result<Vec<TimeSeries>> {
    if count_each == 0 || length == 0 {
        return Err(Error::invalid("sincos generator needs count_each >= 1 and length >= 1"));
    }
    if !(noise_sd >= 0.0 && noise_sd.is_finite()) {
        return Err(Error::invalid(format!("noise sd must be finite and >= 0, got {noise_sd}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = if noise_sd > 0.0 {
        Some(Normal::new(0.0, noise_sd).expect("validated sd"))
    } else {
        None
    };

    let phase = |t: usize| 2.0 * std::f64::consts::PI * t as f64 / length as f64;
    let mut out = Vec::with_capacity(2 * count_each);
    for (prefix, f) in [("sin", f64::sin as fn(f64) -> f64), ("cos", f64::cos)] {
        for k in 1..=count_each {
            let values: Vec<f64> = (1..=length)
                .map(|t| {
                    let eps = noise.map_or(0.0, |n| n.sample(&mut rng));
                    f(phase(t)) + eps
                })
                .collect();
            out.push(TimeSeries::new(format!("{prefix}_{k}"), values)?);
        }
    }
    Ok(out)
}

/// Draw `n_events` distinct times uniformly from `[1, horizon]` without
/// replacement and return them sorted.
pub fn random_ets(id: impl Into<String>, horizon: usize, n_events: usize, seed: u64) -> Result<EventSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_event_times(id, horizon, n_events, &mut rng)
}

/// Same as [`random_ets`] but advancing a caller-owned stream; used by the
/// surrogate-shuffle significance test so one seed drives a whole null
/// distribution.
pub(crate) fn sample_event_times(
    id: impl Into<String>,
    horizon: usize,
    n_events: usize,
    rng: &mut ChaCha8Rng,
) -> Result<EventSeries> {
    if horizon == 0 {
        return Err(Error::invalid("horizon must be >= 1"));
    }
    if n_events > horizon {
        return Err(Error::invalid(format!(
            "cannot place {n_events} distinct events on a horizon of {horizon}"
        )));
    }
    let mut times: Vec<usize> =
        rand::seq::index::sample(rng, horizon, n_events).iter().map(|i| i + 1).collect();
    times.sort_unstable();
    EventSeries::new(id, horizon, times)
}
