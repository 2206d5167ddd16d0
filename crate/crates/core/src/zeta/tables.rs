//! Count tables `N_p`, `N_{p,w}` and the exponent tables `M_p`, `M̃_p`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{GroupContext, ZetaContext};

/// Finitely supported map `(k, h) → integer`; zero entries are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CountTable {
    entries: BTreeMap<(i64, i64), i64>,
}

impl CountTable {
    pub fn new() -> Self {
        CountTable::default()
    }

    pub fn get(&self, k: i64, h: i64) -> i64 {
        self.entries.get(&(k, h)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, k: i64, h: i64, v: i64) {
        if v == 0 {
            return;
        }
        let slot = self.entries.entry((k, h)).or_insert(0);
        *slot += v;
        if *slot == 0 {
            self.entries.remove(&(k, h));
        }
    }

    pub fn set(&mut self, k: i64, h: i64, v: i64) {
        if v == 0 {
            self.entries.remove(&(k, h));
        } else {
            self.entries.insert((k, h), v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &i64)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `[[k, h, value], ...]` in key order.
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|((k, h), v)| json!([k, h, v]))
                .collect(),
        )
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((k, h), v)| format!("({k},{h}):{v}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `N_p(k, h)`: roots of the whole system with `⟨λ_p, α^∨⟩ = k` and
/// `ht α^∨ = h`.
pub fn n_table(g: &GroupContext, p: usize) -> CountTable {
    let mut t = CountTable::new();
    for i in 0..g.num_positive() {
        let (k, h) = (g.k(i, p), g.coroot_height(i));
        t.add(k, h, 1);
        t.add(-k, -h, 1);
    }
    t
}

/// `N_+`: the same count restricted to positive roots, equal to `N_{p,w₀}`.
pub fn n_table_positive(g: &GroupContext, p: usize) -> CountTable {
    let mut t = CountTable::new();
    for i in 0..g.num_positive() {
        t.add(g.k(i, p), g.coroot_height(i), 1);
    }
    t
}

/// `N_{p,w}` over `w⁻¹Φ_-`, with `w` given by its index in the group.
pub fn n_table_w(g: &GroupContext, p: usize, w: usize) -> CountTable {
    let mask = g.group().inversion_mask(w);
    let mut t = CountTable::new();
    for i in 0..g.num_positive() {
        let (k, h) = (g.k(i, p), g.coroot_height(i));
        if mask >> i & 1 == 1 {
            t.add(k, h, 1);
        } else {
            t.add(-k, -h, 1);
        }
    }
    t
}

/// The exponent tables for one parabolic.
#[derive(Debug, Clone)]
pub struct MTables {
    /// `N_p`.
    pub n: CountTable,
    /// `N_+ = N_{p,w₀}`.
    pub n_plus: CountTable,
    /// Maximum of `N_{p,w}(k,h−1) − N_{p,w}(k,h)` over admissible `w`.
    pub m: CountTable,
    /// Maximum of the positive part of the same difference.
    pub m_tilde: CountTable,
    /// The same maximum over all of `W`.
    pub m_unrestricted: CountTable,
    /// `N_+(k,h−1) − N_+(k,h)`.
    pub m_w0: CountTable,
    /// For each `(k,h)` in the window, the first admissible group index
    /// attaining `M_p(k,h)`.
    pub witness: BTreeMap<(i64, i64), usize>,
    /// Every `(k,h)` where the count difference can be nonzero.
    pub window: Vec<(i64, i64)>,
}

impl MTables {
    pub fn m(&self, k: i64, h: i64) -> i64 {
        self.m.get(k, h)
    }
}

fn window_of(n: &CountTable) -> Vec<(i64, i64)> {
    let mut keys: Vec<(i64, i64)> = n
        .support()
        .flat_map(|(k, h)| [(k, h), (k, h + 1)])
        .collect();
    keys.sort_unstable();
    keys.dedup();
    keys
}

fn differences(
    g: &GroupContext,
    p: usize,
    w: usize,
    window: &[(i64, i64)],
    slot: &HashMap<(i64, i64), usize>,
) -> Vec<i64> {
    // diff(k,h) = N_w(k,h−1) − N_w(k,h): each root counted at (k,ht)
    // contributes −1 there and +1 at (k,ht+1).
    let mask = g.group().inversion_mask(w);
    let mut d = vec![0i64; window.len()];
    let mut bump = |k: i64, h: i64| {
        d[slot[&(k, h)]] -= 1;
        d[slot[&(k, h + 1)]] += 1;
    };
    for i in 0..g.num_positive() {
        let (k, h) = (g.k(i, p), g.coroot_height(i));
        if mask >> i & 1 == 1 {
            bump(k, h);
        } else {
            bump(-k, -h);
        }
    }
    d
}

#[derive(Clone)]
struct Acc {
    m: Vec<(i64, usize)>,
    m_tilde: Vec<i64>,
}

fn merge(a: Acc, b: Acc) -> Acc {
    Acc {
        m: a.m
            .into_iter()
            .zip(b.m)
            .map(|(x, y)| {
                if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                    y
                } else {
                    x
                }
            })
            .collect(),
        m_tilde: a
            .m_tilde
            .into_iter()
            .zip(b.m_tilde)
            .map(|(x, y)| x.max(y))
            .collect(),
    }
}

/// Computes `M_p`, `M̃_p`, the unrestricted maximum and the `w₀` form.
pub fn m_table(ctx: &ZetaContext) -> MTables {
    let g = ctx.group_context();
    let p = ctx.p();
    let n = n_table(g, p);
    let n_plus = n_table_positive(g, p);
    let window = window_of(&n);
    let slot: HashMap<(i64, i64), usize> =
        window.iter().enumerate().map(|(i, kh)| (*kh, i)).collect();
    let empty = Acc {
        m: vec![(i64::MIN, usize::MAX); window.len()],
        m_tilde: vec![0; window.len()],
    };

    let adm = ctx.admissible();
    let acc = adm
        .par_iter()
        .map(|&w| {
            let d = differences(g, p, w, &window, &slot);
            Acc {
                m: d.iter().map(|&x| (x, w)).collect(),
                m_tilde: d.iter().map(|&x| x.max(0)).collect(),
            }
        })
        .reduce(|| empty.clone(), merge);

    let unrestricted = (0..g.group().len())
        .into_par_iter()
        .map(|w| differences(g, p, w, &window, &slot))
        .reduce(
            || vec![i64::MIN; window.len()],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect(),
        );

    let mut m = CountTable::new();
    let mut m_tilde = CountTable::new();
    let mut m_unrestricted = CountTable::new();
    let mut m_w0 = CountTable::new();
    let mut witness = BTreeMap::new();
    for (i, &(k, h)) in window.iter().enumerate() {
        m.set(k, h, acc.m[i].0);
        witness.insert((k, h), acc.m[i].1);
        m_tilde.set(k, h, acc.m_tilde[i]);
        m_unrestricted.set(k, h, unrestricted[i]);
        m_w0.set(k, h, n_plus.get(k, h - 1) - n_plus.get(k, h));
    }
    MTables {
        n,
        n_plus,
        m,
        m_tilde,
        m_unrestricted,
        m_w0,
        witness,
        window,
    }
}
