use serde::{Deserialize, Serialize};

use super::{Letter, WordError};

/// Deterministic finite automaton with output reading base-`k` digits.
///
/// The input for index `n` is the base-`k` expansion of `n`, most
/// significant digit first, without leading zeros; `n = 0` reads the empty
/// string and therefore outputs the initial state's letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    initial: usize,
    // table[state][digit]
    table: Vec<Vec<usize>>,
    output: Vec<Letter>,
}

/// Serialized form:
///
/// ```json
/// {"base": 2, "states": 2, "initial": 0,
///  "transitions": [[0,0,0],[0,1,1],[1,0,1],[1,1,0]],
///  "output": [0, 1]}
/// ```
///
/// Each transition is a `[state, digit, next]` triple; `output[s]` is the
/// letter emitted in state `s`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaoSpec {
    pub base: u32,
    pub states: usize,
    pub initial: usize,
    pub transitions: Vec<[usize; 3]>,
    pub output: Vec<Letter>,
}

impl Dfao {
    pub fn from_spec(spec: &DfaoSpec) -> Result<Self, WordError> {
        let bad = |m: String| Err(WordError::InvalidDfao(m));
        if spec.base < 2 {
            return bad(format!("base must be at least 2, got {}", spec.base));
        }
        if spec.states == 0 {
            return bad("automaton needs at least one state".into());
        }
        if spec.initial >= spec.states {
            return bad(format!("initial state {} out of range", spec.initial));
        }
        if spec.output.len() != spec.states {
            return bad(format!(
                "output has {} entries for {} states",
                spec.output.len(),
                spec.states
            ));
        }
        let k = spec.base as usize;
        let mut table = vec![vec![None; k]; spec.states];
        for &[from, digit, to] in &spec.transitions {
            if from >= spec.states || to >= spec.states {
                return bad(format!("transition ({from},{digit})->{to} uses an unknown state"));
            }
            if digit >= k {
                return bad(format!("digit {digit} is not valid in base {k}"));
            }
            if table[from][digit].replace(to).is_some() {
                return bad(format!("transition ({from},{digit}) defined twice"));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(s, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(d, t)| t.ok_or_else(|| WordError::InvalidDfao(format!("missing transition ({s},{d})"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Dfao {
            base: spec.base,
            initial: spec.initial,
            table,
            output: spec.output.clone(),
        })
    }

    pub fn from_json(s: &str) -> Result<Self, WordError> {
        let spec: DfaoSpec = serde_json::from_str(s).map_err(|e| WordError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> DfaoSpec {
        let mut transitions = Vec::new();
        for (s, row) in self.table.iter().enumerate() {
            for (d, &t) in row.iter().enumerate() {
                transitions.push([s, d, t]);
            }
        }
        DfaoSpec {
            base: self.base,
            states: self.table.len(),
            initial: self.initial,
            transitions,
            output: self.output.clone(),
        }
    }

    /// Parity of the binary digit sum.
    pub fn thue_morse() -> Self {
        Dfao {
            base: 2,
            initial: 0,
            table: vec![vec![0, 1], vec![1, 0]],
            output: vec![0, 1],
        }
    }

    pub fn constant(letter: Letter, base: u32) -> Self {
        Dfao {
            base,
            initial: 0,
            table: vec![vec![0; base as usize]],
            output: vec![letter],
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn outputs(&self) -> &[Letter] {
        &self.output
    }

    /// The letter `a_n` produced on the base-`k` expansion of `n`.
    pub fn letter(&self, n: u64) -> Letter {
        let k = self.base as u64;
        let mut digits = Vec::new();
        let mut x = n;
        while x > 0 {
            digits.push((x % k) as usize);
            x /= k;
        }
        let state = digits
            .iter()
            .rev()
            .fold(self.initial, |s, &d| self.table[s][d]);
        self.output[state]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thue_morse_terms() {
        let tm = Dfao::thue_morse();
        let got: Vec<Letter> = (0..13).map(|n| tm.letter(n)).collect();
        assert_eq!(got, vec![0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0]);
        assert_eq!(tm.letter(3), 0);
        for n in 0..2000u64 {
            assert_eq!(tm.letter(n), n.count_ones() % 2);
        }
    }

    #[test]
    fn constant_output() {
        let c = Dfao::constant(7, 3);
        assert!((0..100).all(|n| c.letter(n) == 7));
    }

    #[test]
    fn msd_first_order_matters() {
        // state flips to 1 on reading a 1 first, then is absorbing: outputs
        // depend on the most significant digit only
        let spec = DfaoSpec {
            base: 3,
            states: 3,
            initial: 0,
            transitions: vec![
                [0, 0, 0],
                [0, 1, 1],
                [0, 2, 2],
                [1, 0, 1],
                [1, 1, 1],
                [1, 2, 1],
                [2, 0, 2],
                [2, 1, 2],
                [2, 2, 2],
            ],
            output: vec![0, 1, 2],
        };
        let d = Dfao::from_spec(&spec).unwrap();
        assert_eq!(d.letter(0), 0);
        assert_eq!(d.letter(5), 1); // 12 in base 3
        assert_eq!(d.letter(7), 2); // 21 in base 3
    }

    #[test]
    fn json_round_trip_and_validation() {
        let json = r#"{"base":2,"states":2,"initial":0,
            "transitions":[[0,0,0],[0,1,1],[1,0,1],[1,1,0]],"output":[0,1]}"#;
        let d = Dfao::from_json(json).unwrap();
        assert_eq!(d, Dfao::thue_morse());
        assert_eq!(Dfao::from_spec(&d.to_spec()).unwrap(), d);

        let missing = r#"{"base":2,"states":2,"initial":0,
            "transitions":[[0,0,0],[0,1,1],[1,0,1]],"output":[0,1]}"#;
        assert!(matches!(Dfao::from_json(missing), Err(WordError::InvalidDfao(_))));
        let bad_state = r#"{"base":2,"states":1,"initial":0,
            "transitions":[[0,0,0],[0,1,3]],"output":[0]}"#;
        assert!(matches!(Dfao::from_json(bad_state), Err(WordError::InvalidDfao(_))));
        assert!(matches!(Dfao::from_json("{"), Err(WordError::Parse { .. })));
    }
}
