use serde::{Deserialize, Serialize};

/// Reduction data for quotients of `BP_*`: an optional power of 2 for the
/// coefficients and optional powers of the `v_i` spanning an invariant
/// ideal `(2^{a0}, v1^{a1}, ...)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Modulus {
    /// Reduce coefficients modulo `2^n` when present.
    pub two_power: Option<u32>,
    /// `ideal_powers[k]` is the exponent `a_{k+1}` killing `v_{k+1}^{a_{k+1}}`.
    pub ideal_powers: Vec<u32>,
}

impl Modulus {
    /// No reduction at all: the integral (2-local) ring.
    pub fn integral() -> Self {
        Modulus::default()
    }

    /// Coefficients modulo `2^n`.
    pub fn mod_2pow(n: u32) -> Self {
        Modulus { two_power: Some(n), ideal_powers: Vec::new() }
    }

    /// The mod 2 Moore modulus.
    pub fn mod2() -> Self {
        Modulus::mod_2pow(1)
    }

    /// `(2^{a0}, v1^{a1}, ...)`.
    pub fn ideal(powers: &[u32]) -> Self {
        assert!(!powers.is_empty(), "ideal spec must name at least 2^{{a0}}");
        assert!(powers.iter().all(|&p| p >= 1), "all ideal exponents must be >= 1");
        Modulus { two_power: Some(powers[0]), ideal_powers: powers[1..].to_vec() }
    }

    pub fn is_integral(&self) -> bool {
        self.two_power.is_none() && self.ideal_powers.is_empty()
    }

    /// Exponent bound for `v_i`, if the ideal kills a power of it.
    pub fn v_power(&self, index: u32) -> Option<u32> {
        self.ideal_powers.get(index as usize - 1).copied()
    }

    pub fn describe(&self) -> String {
        match self.two_power {
            None => "integral".to_string(),
            Some(n) => {
                let mut parts = vec![if n == 1 { "2".to_string() } else { format!("2^{n}") }];
                for (k, a) in self.ideal_powers.iter().enumerate() {
                    parts.push(if *a == 1 {
                        format!("v{}", k + 1)
                    } else {
                        format!("v{}^{}", k + 1, a)
                    });
                }
                format!("({})", parts.join(", "))
            }
        }
    }
}
