//! Bandit simulation over a generic, exactly-represented reward codomain.
//!
//! The environment has two buttons. Red always pays one unit. Blue pays only
//! on its `i`-th press when `i` is a power of two (`1, 2, 4, …`), and the size
//! of that payment depends on the [`RewardScheme`]:
//!
//! * `ExactLaurent`: the first-order infinite number `1ε⁻¹`;
//! * `StaticApprox(M)`: the finite stand-in `M`;
//! * `DynamicApprox(M)`: `M·2^j` on the `2^j`-th press.
//!
//! Under any finite static stand-in the blue arm's sample mean eventually
//! drops below red's; the exact scheme never does.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::rational::Rational;

/// A reward codomain: exact addition, scaling by rationals and a total order.
pub trait RewardValue: Clone + Ord + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn add_value(&mut self, rhs: &Self);
    fn scale(&self, q: &Rational) -> Self;
}

impl RewardValue for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn add_value(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl RewardValue for LaurentSeries {
    fn zero() -> Self {
        LaurentSeries::zero()
    }

    fn add_value(&mut self, rhs: &Self) {
        self.add_assign_ref(rhs);
    }

    fn scale(&self, q: &Rational) -> Self {
        self.scalar_mul(q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arm {
    Red,
    Blue,
}

impl Arm {
    pub const ALL: [Arm; 2] = [Arm::Red, Arm::Blue];

    pub fn index(self) -> usize {
        match self {
            Arm::Red => 0,
            Arm::Blue => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Arm::Red => "red",
            Arm::Blue => "blue",
        }
    }
}

impl fmt::Display for Arm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Payout rule of the two-button environment for one reward codomain.
pub trait RewardModel {
    type Value: RewardValue;

    /// Red's payout.
    fn unit(&self) -> Self::Value;

    /// Blue's payout on press number `2^j`.
    fn blue_hit(&self, j: u32) -> Self::Value;
}

/// `1ε⁻¹` for every paying blue press.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactOmega;

impl RewardModel for ExactOmega {
    type Value = LaurentSeries;

    fn unit(&self) -> LaurentSeries {
        LaurentSeries::one()
    }

    fn blue_hit(&self, _j: u32) -> LaurentSeries {
        LaurentSeries::monomial(Rational::one(), -1)
    }
}

/// `M` for every paying blue press.
#[derive(Debug, Clone)]
pub struct StaticApprox(pub Rational);

impl RewardModel for StaticApprox {
    type Value = Rational;

    fn unit(&self) -> Rational {
        Rational::one()
    }

    fn blue_hit(&self, _j: u32) -> Rational {
        self.0.clone()
    }
}

/// `M·2^j` on the `2^j`-th blue press.
#[derive(Debug, Clone)]
pub struct DynamicApprox(pub Rational);

impl RewardModel for DynamicApprox {
    type Value = Rational;

    fn unit(&self) -> Rational {
        Rational::one()
    }

    fn blue_hit(&self, j: u32) -> Rational {
        &self.0 * &Rational::from(BigInt::one() << j)
    }
}

/// Which reward codomain the blue button pays in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RewardScheme {
    ExactLaurent,
    StaticApprox(Rational),
    DynamicApprox(Rational),
}

impl FromStr for RewardScheme {
    type Err = Error;

    /// `laurent`, `approx:<M>` or `dynamic:<M>` with `M > 0`.
    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidScheme(s.to_owned());
        if s == "laurent" {
            return Ok(RewardScheme::ExactLaurent);
        }
        let (kind, m) = s.split_once(':').ok_or_else(invalid)?;
        let m: Rational = m.parse().map_err(|_| invalid())?;
        if !m.is_positive() {
            return Err(invalid());
        }
        match kind {
            "approx" => Ok(RewardScheme::StaticApprox(m)),
            "dynamic" => Ok(RewardScheme::DynamicApprox(m)),
            _ => Err(invalid()),
        }
    }
}

impl fmt::Display for RewardScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewardScheme::ExactLaurent => f.write_str("laurent"),
            RewardScheme::StaticApprox(m) => write!(f, "approx:{m}"),
            RewardScheme::DynamicApprox(m) => write!(f, "dynamic:{m}"),
        }
    }
}

impl Serialize for RewardScheme {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RewardScheme {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EnvState {
    pub blue_presses: u64,
    pub step_count: u64,
}

/// `i ≥ 1` with exactly one set bit.
pub fn is_power_of_two(i: u64) -> bool {
    i.is_power_of_two()
}

/// Advances the environment by one button press.
pub fn env_step<M: RewardModel>(state: EnvState, action: Arm, model: &M) -> (EnvState, M::Value) {
    let mut next = state;
    next.step_count += 1;
    match action {
        Arm::Red => (next, model.unit()),
        Arm::Blue => {
            next.blue_presses += 1;
            let i = next.blue_presses;
            let reward = if is_power_of_two(i) {
                model.blue_hit(i.trailing_zeros())
            } else {
                M::Value::zero()
            };
            (next, reward)
        }
    }
}

/// Compares `sum_a / n_a` with `sum_b / n_b` without dividing, as
/// `n_b·sum_a` against `n_a·sum_b`.
///
/// # Panics
///
/// Panics if either count is zero.
pub fn mean_compare<R: RewardValue>(sum_a: &R, n_a: u64, sum_b: &R, n_b: u64) -> Ordering {
    assert!(n_a > 0 && n_b > 0, "mean of an empty sample");
    let lhs = sum_a.scale(&Rational::from(n_b));
    let rhs = sum_b.scale(&Rational::from(n_a));
    lhs.cmp(&rhs)
}

/// Exact sample mean `sum / n`.
pub fn mean<R: RewardValue>(sum: &R, n: u64) -> R {
    assert!(n > 0, "mean of an empty sample");
    sum.scale(&Rational::from(n).recip().expect("n > 0"))
}

/// One step of a scripted evaluation: after `n` presses of each button.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptedRow<V> {
    pub n: u64,
    pub blue_reward: V,
    pub blue_sum: V,
    pub red_sum: V,
    /// Blue's sample mean against red's.
    pub blue_vs_red: Ordering,
}

/// Presses blue and red `n` times each, independently, comparing the two
/// sample means after every press. Unbounded; take as many rows as needed.
pub struct ScriptedRun<'a, M: RewardModel> {
    model: &'a M,
    blue: EnvState,
    red: EnvState,
    blue_sum: M::Value,
    red_sum: M::Value,
}

impl<'a, M: RewardModel> ScriptedRun<'a, M> {
    pub fn new(model: &'a M) -> Self {
        ScriptedRun {
            model,
            blue: EnvState::default(),
            red: EnvState::default(),
            blue_sum: M::Value::zero(),
            red_sum: M::Value::zero(),
        }
    }

    /// Advances one press of each button and returns the comparison, without
    /// materializing a row.
    pub fn advance(&mut self) -> (u64, Ordering, M::Value) {
        let (blue, blue_reward) = env_step(self.blue, Arm::Blue, self.model);
        let (red, red_reward) = env_step(self.red, Arm::Red, self.model);
        self.blue = blue;
        self.red = red;
        self.blue_sum.add_value(&blue_reward);
        self.red_sum.add_value(&red_reward);
        let n = blue.blue_presses;
        let ord = mean_compare(&self.blue_sum, n, &self.red_sum, red.step_count);
        (n, ord, blue_reward)
    }
}

impl<M: RewardModel> Iterator for ScriptedRun<'_, M> {
    type Item = ScriptedRow<M::Value>;

    fn next(&mut self) -> Option<Self::Item> {
        let (n, blue_vs_red, blue_reward) = self.advance();
        Some(ScriptedRow {
            n,
            blue_reward,
            blue_sum: self.blue_sum.clone(),
            red_sum: self.red_sum.clone(),
            blue_vs_red,
        })
    }
}

pub fn scripted_eval<M: RewardModel>(n: u64, model: &M) -> Vec<ScriptedRow<M::Value>> {
    ScriptedRun::new(model).take(n as usize).collect()
}

/// First press count at which blue's mean falls below red's, scanning up to
/// `max_n` presses.
pub fn scripted_flip_step<M: RewardModel>(model: &M, max_n: u64) -> Option<u64> {
    let mut run = ScriptedRun::new(model);
    for _ in 0..max_n {
        let (n, ord, _) = run.advance();
        if ord == Ordering::Less {
            return Some(n);
        }
    }
    None
}

pub const DEFAULT_CROSSOVER_BOUND: u64 = 1 << 32;

/// Smallest `n` with `M·(⌊log₂ n⌋ + 1) < n`, searched up to
/// [`DEFAULT_CROSSOVER_BOUND`].
pub fn crossover_step(m: &Rational) -> Option<u64> {
    crossover_step_bounded(m, DEFAULT_CROSSOVER_BOUND)
}

/// Like [`crossover_step`] with an explicit inclusive bound. Within a band
/// `2^k ≤ n < 2^{k+1}` the left side is constant, so each band is resolved
/// in one step.
pub fn crossover_step_bounded(m: &Rational, bound: u64) -> Option<u64> {
    for k in 0..64u32 {
        let lo = 1u64 << k;
        if lo > bound {
            break;
        }
        let hi = lo.saturating_add(lo - 1).min(bound);
        let first_above: BigInt = (m * &Rational::from(k as u64 + 1)).floor() + 1;
        let candidate = first_above.max(BigInt::from(lo));
        if let Some(n) = candidate.to_u64() {
            if n <= hi {
                return Some(n);
            }
        }
    }
    None
}

/// `Σ gamma^t · rewards[t]`, evaluated exactly.
pub fn discounted_return<R: RewardValue>(rewards: &[R], gamma: &Rational) -> R {
    let mut total = R::zero();
    let mut weight = Rational::one();
    for r in rewards {
        total.add_value(&r.scale(&weight));
        weight *= gamma;
    }
    total
}

/// xorshift64* (Vigna 2016): state update `x ^= x >> 12; x ^= x << 25;
/// x ^= x >> 27`, output `x * 0x2545F4914F6CDD1D`. The seed is mixed through
/// one round of splitmix64 so that seed 0 is usable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        if z == 0 {
            z = 0x9E37_79B9_7F4A_7C15;
        }
        XorShift64Star { state: z }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "scripted")]
    Scripted,
    #[serde(rename = "egreedy")]
    EpsilonGreedy,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scripted" => Ok(Mode::Scripted),
            "egreedy" => Ok(Mode::EpsilonGreedy),
            other => Err(Error::InvalidConfig(format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Scripted => "scripted",
            Mode::EpsilonGreedy => "egreedy",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scheme: RewardScheme,
    pub mode: Mode,
    pub steps: u64,
    #[serde(default)]
    pub epsilon: Rational,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub discount: Option<Rational>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidConfig("steps must be positive".into()));
        }
        if self.epsilon.is_negative() || self.epsilon > Rational::one() {
            return Err(Error::InvalidConfig(format!(
                "epsilon {} outside [0, 1]",
                self.epsilon
            )));
        }
        if let Some(gamma) = &self.discount {
            if !gamma.is_positive() || *gamma >= Rational::one() {
                return Err(Error::InvalidConfig(format!(
                    "discount {gamma} outside (0, 1)"
                )));
            }
        }
        Ok(())
    }
}

/// One pull of an epsilon-greedy run. Means are `None` for an unpulled arm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyRow<V> {
    pub step: u64,
    pub arm: Arm,
    pub explored: bool,
    pub reward: V,
    pub red_mean: Option<V>,
    pub blue_mean: Option<V>,
    /// The arm the greedy rule would choose next.
    pub preferred: Arm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedySummary<V> {
    pub pulls: [u64; 2],
    pub sums: [V; 2],
    pub final_greedy: Arm,
    pub rewards: Vec<V>,
    pub trace: Vec<GreedyRow<V>>,
}

impl<V> GreedySummary<V> {
    /// Step at which the preferred arm first switches from blue to red.
    pub fn flip_step(&self) -> Option<u64> {
        self.trace
            .windows(2)
            .find(|w| w[0].preferred == Arm::Blue && w[1].preferred == Arm::Red)
            .map(|w| w[1].step)
    }
}

/// Greedy preference given per-arm pull counts and sums. An unpulled arm is
/// never preferred over a pulled one; ties go to red.
pub fn greedy_arm<V: RewardValue>(pulls: &[u64; 2], sums: &[V; 2]) -> Arm {
    match (pulls[0], pulls[1]) {
        (0, 0) | (_, 0) => Arm::Red,
        (0, _) => Arm::Blue,
        (nr, nb) => {
            if mean_compare(&sums[1], nb, &sums[0], nr) == Ordering::Greater {
                Arm::Blue
            } else {
                Arm::Red
            }
        }
    }
}

/// `⌊epsilon · 2^64⌋`, so that a uniform draw `u` explores iff `u < threshold`.
fn exploration_threshold(epsilon: &Rational) -> u128 {
    let scaled = epsilon * &Rational::from(BigInt::one() << 64);
    scaled.floor().to_u128().unwrap_or(0).min(1u128 << 64)
}

/// Runs an epsilon-greedy agent for `steps` pulls.
///
/// The first two steps pull red then blue. Afterwards each step draws one
/// `u64`; if it is below `⌊ε·2^64⌋` the agent explores and draws a second
/// `u64`, whose top bit selects the arm (0 red, 1 blue). Otherwise it pulls
/// the greedy arm.
pub fn epsilon_greedy_run<M: RewardModel>(
    steps: u64,
    epsilon: &Rational,
    seed: u64,
    model: &M,
) -> GreedySummary<M::Value> {
    let mut rng = XorShift64Star::new(seed);
    let threshold = exploration_threshold(epsilon);
    let mut state = EnvState::default();
    let mut pulls = [0u64; 2];
    let mut sums = [M::Value::zero(), M::Value::zero()];
    let mut rewards = Vec::with_capacity(steps as usize);
    let mut trace = Vec::with_capacity(steps as usize);

    for step in 1..=steps {
        let (arm, explored) = if let Some(&arm) = Arm::ALL.get(step as usize - 1) {
            (arm, false)
        } else if (rng.next_u64() as u128) < threshold {
            let arm = if rng.next_u64() >> 63 == 0 {
                Arm::Red
            } else {
                Arm::Blue
            };
            (arm, true)
        } else {
            (greedy_arm(&pulls, &sums), false)
        };

        let (next, reward) = env_step(state, arm, model);
        state = next;
        pulls[arm.index()] += 1;
        sums[arm.index()].add_value(&reward);
        let arm_mean = |a: Arm| {
            let n = pulls[a.index()];
            (n > 0).then(|| mean(&sums[a.index()], n))
        };
        trace.push(GreedyRow {
            step,
            arm,
            explored,
            reward: reward.clone(),
            red_mean: arm_mean(Arm::Red),
            blue_mean: arm_mean(Arm::Blue),
            preferred: greedy_arm(&pulls, &sums),
        });
        rewards.push(reward);
    }

    GreedySummary {
        final_greedy: greedy_arm(&pulls, &sums),
        pulls,
        sums,
        rewards,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> Rational {
        text.parse().unwrap()
    }

    fn s(text: &str) -> LaurentSeries {
        text.parse().unwrap()
    }

    #[test]
    fn scheme_text() {
        assert_eq!(
            "laurent".parse::<RewardScheme>().unwrap(),
            RewardScheme::ExactLaurent
        );
        assert_eq!(
            "approx:1000".parse::<RewardScheme>().unwrap(),
            RewardScheme::StaticApprox(q("1000"))
        );
        assert_eq!(
            "dynamic:1/2".parse::<RewardScheme>().unwrap().to_string(),
            "dynamic:1/2"
        );
        for bad in [
            "approx:0",
            "approx:-3",
            "approx",
            "exact",
            "dynamic:x",
            "approx:",
        ] {
            assert!(bad.parse::<RewardScheme>().is_err(), "{bad}");
        }
    }

    #[test]
    fn env_step_examples() {
        let (state, reward) = env_step(EnvState::default(), Arm::Blue, &ExactOmega);
        assert_eq!(state.blue_presses, 1);
        assert_eq!(reward, s("1 eps^-1"));

        let two = EnvState {
            blue_presses: 2,
            step_count: 2,
        };
        let (state, reward) = env_step(two, Arm::Blue, &StaticApprox(q("1000")));
        assert_eq!(state.blue_presses, 3);
        assert!(reward.is_zero());
        let (_, reward) = env_step(two, Arm::Blue, &ExactOmega);
        assert!(reward.is_zero());

        let (state, reward) = env_step(EnvState::default(), Arm::Red, &StaticApprox(q("1000")));
        assert_eq!(reward, q("1"));
        assert_eq!(
            state,
            EnvState {
                blue_presses: 0,
                step_count: 1
            }
        );
    }

    #[test]
    fn dynamic_payout_doubles() {
        let model = DynamicApprox(q("1000000"));
        let mut state = EnvState::default();
        let mut paid = Vec::new();
        for _ in 0..8 {
            let (next, reward) = env_step(state, Arm::Blue, &model);
            state = next;
            if !reward.is_zero() {
                paid.push(reward);
            }
        }
        assert_eq!(
            paid,
            vec![q("1000000"), q("2000000"), q("4000000"), q("8000000")]
        );
    }

    #[test]
    fn powers_of_two() {
        assert!(is_power_of_two(1));
        assert!(!is_power_of_two(6));
        assert!(is_power_of_two(1024));
        assert!(!is_power_of_two(0));
    }

    #[test]
    fn mean_comparisons() {
        assert_eq!(mean_compare(&q("3"), 2, &q("1"), 1), Ordering::Greater);
        assert_eq!(
            mean_compare(&s("1 eps^-1"), 1000, &s("1"), 1),
            Ordering::Greater
        );
        assert_eq!(mean_compare(&q("2"), 4, &q("1"), 2), Ordering::Equal);
        assert_eq!(mean(&q("3"), 6), q("1/2"));
    }

    #[test]
    fn scripted_small_run() {
        let rows = scripted_eval(4, &StaticApprox(q("1000")));
        let hits: Vec<u64> = rows
            .iter()
            .filter(|r| !r.blue_reward.is_zero())
            .map(|r| r.n)
            .collect();
        assert_eq!(hits, vec![1, 2, 4]);
        let last = rows.last().unwrap();
        assert_eq!(last.blue_sum, q("3000"));
        assert_eq!(mean(&last.blue_sum, 4), q("750"));
        assert_eq!(last.blue_vs_red, Ordering::Greater);
    }

    #[test]
    fn crossover_values() {
        assert_eq!(crossover_step(&q("1")), Some(3));
        assert_eq!(crossover_step(&q("1000")), Some(14001));
        assert_eq!(crossover_step(&q("1000000")), Some(25_000_001));
        assert_eq!(crossover_step_bounded(&q("1000"), 14000), None);
        assert_eq!(crossover_step(&q("1/2")), Some(1));
    }

    #[test]
    fn static_flip_matches_crossover() {
        let m = q("1000");
        assert_eq!(
            scripted_flip_step(&StaticApprox(m.clone()), 20_000),
            crossover_step(&m)
        );
        assert_eq!(scripted_flip_step(&StaticApprox(q("1")), 10), Some(3));
    }

    #[test]
    fn discounted_examples() {
        let empty: Vec<LaurentSeries> = vec![];
        assert!(discounted_return(&empty, &q("1/2")).is_zero());
        let ones = vec![s("1"); 3];
        assert_eq!(discounted_return(&ones, &q("1/2")), s("7/4"));
        let mixed = vec![s("1 eps^-1"), s("1")];
        assert_eq!(discounted_return(&mixed, &q("1/2")), s("1 eps^-1 + 1/2"));
    }

    #[test]
    fn rng_is_fixed() {
        let mut a = XorShift64Star::new(42);
        let mut b = XorShift64Star::new(42);
        let xs: Vec<u64> = (0..4).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..4).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(XorShift64Star::new(0).next_u64(), 0);
        assert_ne!(
            XorShift64Star::new(1).next_u64(),
            XorShift64Star::new(2).next_u64()
        );
    }

    #[test]
    fn exploration_threshold_bounds() {
        assert_eq!(exploration_threshold(&q("0")), 0);
        assert_eq!(exploration_threshold(&q("1")), 1u128 << 64);
        assert_eq!(exploration_threshold(&q("1/2")), 1u128 << 63);
    }

    #[test]
    fn greedy_laurent_stays_blue() {
        let run = epsilon_greedy_run(100, &q("0"), 7, &ExactOmega);
        assert_eq!(run.final_greedy, Arm::Blue);
        assert_eq!(run.pulls, [1, 99]);
        assert_eq!(run.flip_step(), None);
    }

    #[test]
    fn greedy_static_locks_into_red() {
        let m = q("1000");
        let flip = crossover_step(&m).unwrap();
        let run = epsilon_greedy_run(flip + 2, &q("0"), 7, &StaticApprox(m));
        assert_eq!(run.final_greedy, Arm::Red);
        // At 14000 blue presses the means tie, and ties go to red.
        assert_eq!(run.pulls, [3, flip - 1]);
        assert_eq!(run.flip_step(), Some(flip));
    }

    #[test]
    fn initialization_pulls_each_arm_once() {
        let run = epsilon_greedy_run(2, &q("1"), 3, &ExactOmega);
        assert_eq!(run.pulls, [1, 1]);
        let run = epsilon_greedy_run(2, &q("1/3"), 3, &DynamicApprox(q("5")));
        assert_eq!(run.pulls, [1, 1]);
        assert_eq!(run.trace[0].arm, Arm::Red);
        assert_eq!(run.trace[1].arm, Arm::Blue);
    }

    #[test]
    fn full_exploration_uses_both_arms() {
        let run = epsilon_greedy_run(200, &q("1"), 11, &StaticApprox(q("10")));
        assert!(run.trace[2..].iter().all(|r| r.explored));
        assert!(run.pulls[0] > 50 && run.pulls[1] > 50);
    }

    #[test]
    fn config_validation() {
        let mut cfg = RunConfig {
            scheme: RewardScheme::ExactLaurent,
            mode: Mode::EpsilonGreedy,
            steps: 10,
            epsilon: q("1/10"),
            seed: 1,
            discount: Some(q("9/10")),
        };
        assert!(cfg.validate().is_ok());
        cfg.epsilon = q("3/2");
        assert!(cfg.validate().is_err());
        cfg.epsilon = q("0");
        cfg.discount = Some(q("1"));
        assert!(cfg.validate().is_err());
        cfg.discount = None;
        cfg.steps = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_json() {
        let cfg: RunConfig =
            serde_json::from_str(r#"{"scheme":"approx:1000","mode":"scripted","steps":20000}"#)
                .unwrap();
        assert_eq!(cfg.scheme, RewardScheme::StaticApprox(q("1000")));
        assert_eq!(cfg.epsilon, q("0"));
        assert_eq!(cfg.seed, 0);
        assert!(serde_json::from_str::<RunConfig>(
            r#"{"scheme":"approx:1000","mode":"scripted","steps":1,"bogus":1}"#
        )
        .is_err());
    }
}
