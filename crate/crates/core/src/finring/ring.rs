use std::fmt;
use std::sync::Arc;

use crate::error::{definition, Error, Result};

/// Index of an element inside a [`FiniteRing`]'s tables.
pub type Elem = usize;

/// Largest ring the crate will build tables for.
pub const MAX_RING_SIZE: usize = 64;

struct RingData {
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Option<Elem>>,
    zero: Elem,
    one: Elem,
    label: String,
    element_labels: Vec<String>,
}

/// A finite commutative unital ring given by complete operation tables.
///
/// Cloning is cheap: the tables are shared.
#[derive(Clone)]
pub struct FiniteRing {
    data: Arc<RingData>,
}

impl FiniteRing {
    /// Builds a ring from explicit tables and checks every ring axiom exhaustively.
    pub fn from_tables(
        label: impl Into<String>,
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        zero: Elem,
        one: Elem,
    ) -> Result<Self> {
        let size = add.len();
        if size == 0 {
            return Err(Error::RingAxiom(
                "ring must have at least one element".into(),
            ));
        }
        if size > MAX_RING_SIZE {
            return Err(definition(format!(
                "ring of size {size} exceeds the cap of {MAX_RING_SIZE}"
            )));
        }
        if mul.len() != size || add.iter().chain(mul.iter()).any(|row| row.len() != size) {
            return Err(Error::RingAxiom(
                "operation tables must be square and of equal size".into(),
            ));
        }
        let flat_add: Vec<Elem> = add.into_iter().flatten().collect();
        let flat_mul: Vec<Elem> = mul.into_iter().flatten().collect();
        let labels = (0..size).map(|i| i.to_string()).collect();
        Self::build(label.into(), size, flat_add, flat_mul, zero, one, labels)
    }

    /// Table construction shared by all constructors. Validates the axioms.
    pub(crate) fn build(
        label: String,
        size: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        element_labels: Vec<String>,
    ) -> Result<Self> {
        debug_assert_eq!(element_labels.len(), size);
        check_axioms(size, &add, &mul, zero, one)?;
        let neg = (0..size)
            .map(|a| {
                (0..size)
                    .find(|&b| add[a * size + b] == zero)
                    .expect("checked by axioms")
            })
            .collect();
        let inv = (0..size)
            .map(|a| (0..size).find(|&b| mul[a * size + b] == one))
            .collect();
        Ok(FiniteRing {
            data: Arc::new(RingData {
                size,
                add,
                mul,
                neg,
                inv,
                zero,
                one,
                label,
                element_labels,
            }),
        })
    }

    /// The residue ring ℤ/n with element `i` standing for the residue `i`.
    pub fn zmod(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_RING_SIZE {
            return Err(definition(format!(
                "zmod modulus must lie in 1..={MAX_RING_SIZE}, got {n}"
            )));
        }
        let add = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let mul = (0..n * n).map(|k| (k / n) * (k % n) % n).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::build(
            format!("Z/{n}"),
            n,
            add,
            mul,
            0,
            if n == 1 { 0 } else { 1 },
            labels,
        )
    }

    /// Cartesian product of rings. Tuples are indexed in mixed radix with the
    /// first factor most significant.
    pub fn product(factors: &[FiniteRing]) -> Result<Self> {
        if factors.is_empty() {
            return Err(definition("product of an empty list of rings"));
        }
        let size = factors
            .iter()
            .try_fold(1usize, |acc, f| {
                acc.checked_mul(f.size()).filter(|&s| s <= MAX_RING_SIZE)
            })
            .ok_or_else(|| {
                definition(format!("product ring exceeds the cap of {MAX_RING_SIZE}"))
            })?;
        let decode = |mut idx: usize| -> Vec<Elem> {
            let mut parts = vec![0; factors.len()];
            for (slot, f) in parts.iter_mut().zip(factors).rev() {
                *slot = idx % f.size();
                idx /= f.size();
            }
            parts
        };
        let encode = |parts: &[Elem]| -> usize {
            parts
                .iter()
                .zip(factors)
                .fold(0, |acc, (&p, f)| acc * f.size() + p)
        };
        let tuples: Vec<Vec<Elem>> = (0..size).map(decode).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in &tuples {
            for b in &tuples {
                let s: Vec<Elem> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.add(a[i], b[i]))
                    .collect();
                let p: Vec<Elem> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.mul(a[i], b[i]))
                    .collect();
                add.push(encode(&s));
                mul.push(encode(&p));
            }
        }
        let zero = encode(&factors.iter().map(|f| f.zero()).collect::<Vec<_>>());
        let one = encode(&factors.iter().map(|f| f.one()).collect::<Vec<_>>());
        let labels = tuples
            .iter()
            .map(|t| {
                let inner: Vec<&str> = t
                    .iter()
                    .zip(factors)
                    .map(|(&e, f)| f.element_label(e))
                    .collect();
                format!("({})", inner.join(","))
            })
            .collect();
        let label = factors
            .iter()
            .map(|f| f.label().to_string())
            .collect::<Vec<_>>()
            .join("×");
        Self::build(label, size, add, mul, zero, one, labels)
    }

    /// `base[x]/(m(x))` for the monic polynomial
    /// `m = x^d + c[d-1] x^(d-1) + … + c[0]`. Elements are coefficient vectors,
    /// indexed with the constant coefficient least significant.
    pub fn truncated_polynomial(base: &FiniteRing, monic_tail: &[Elem], var: &str) -> Result<Self> {
        let d = monic_tail.len();
        if d == 0 {
            return Err(definition("modulus must have positive degree"));
        }
        if monic_tail.iter().any(|&c| c >= base.size()) {
            return Err(definition("modulus coefficient out of range"));
        }
        let q = base.size();
        let size = q
            .checked_pow(d as u32)
            .filter(|&s| s <= MAX_RING_SIZE)
            .ok_or_else(|| {
                definition(format!("quotient ring exceeds the cap of {MAX_RING_SIZE}"))
            })?;
        let decode = |mut idx: usize| -> Vec<Elem> {
            (0..d)
                .map(|_| {
                    let c = idx % q;
                    idx /= q;
                    c
                })
                .collect()
        };
        let encode = |v: &[Elem]| v.iter().rev().fold(0, |acc, &c| acc * q + c);
        let vecs: Vec<Vec<Elem>> = (0..size).map(decode).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in &vecs {
            for b in &vecs {
                let s: Vec<Elem> = (0..d).map(|i| base.add(a[i], b[i])).collect();
                add.push(encode(&s));
                // schoolbook product, then reduce the top coefficients with x^d = -tail
                let mut prod = vec![base.zero(); 2 * d - 1];
                for i in 0..d {
                    for j in 0..d {
                        prod[i + j] = base.add(prod[i + j], base.mul(a[i], b[j]));
                    }
                }
                for top in (d..2 * d - 1).rev() {
                    let c = prod[top];
                    prod[top] = base.zero();
                    for (k, &t) in monic_tail.iter().enumerate() {
                        let shift = top - d + k;
                        prod[shift] = base.sub(prod[shift], base.mul(c, t));
                    }
                }
                mul.push(encode(&prod[..d]));
            }
        }
        let labels = vecs.iter().map(|v| poly_label(base, v, var)).collect();
        let mut one = vec![base.zero(); d];
        one[0] = base.one();
        let modulus = {
            let mut full = monic_tail.to_vec();
            full.push(base.one());
            poly_label(base, &full, var)
        };
        Self::build(
            format!("{}[{var}]/({modulus})", base.label()),
            size,
            add,
            mul,
            0,
            encode(&one),
            labels,
        )
    }

    /// `base ⊕ base^rank` with all products of the extra generators equal to zero.
    pub fn square_zero_extension(base: &FiniteRing, rank: usize) -> Result<Self> {
        const NAMES: [&str; 4] = ["x", "y", "z", "w"];
        if rank == 0 || rank > NAMES.len() {
            return Err(definition("square-zero extension rank must lie in 1..=4"));
        }
        let q = base.size();
        let size = q
            .checked_pow(rank as u32 + 1)
            .filter(|&s| s <= MAX_RING_SIZE)
            .ok_or_else(|| definition(format!("extension exceeds the cap of {MAX_RING_SIZE}")))?;
        let width = rank + 1;
        let decode = |mut idx: usize| -> Vec<Elem> {
            (0..width)
                .map(|_| {
                    let c = idx % q;
                    idx /= q;
                    c
                })
                .collect()
        };
        let encode = |v: &[Elem]| v.iter().rev().fold(0, |acc, &c| acc * q + c);
        let vecs: Vec<Vec<Elem>> = (0..size).map(decode).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in &vecs {
            for b in &vecs {
                let s: Vec<Elem> = (0..width).map(|i| base.add(a[i], b[i])).collect();
                let mut p = vec![base.mul(a[0], b[0])];
                for i in 1..width {
                    p.push(base.add(base.mul(a[0], b[i]), base.mul(a[i], b[0])));
                }
                add.push(encode(&s));
                mul.push(encode(&p));
            }
        }
        let labels = vecs
            .iter()
            .map(|v| {
                let mut parts = Vec::new();
                if v[0] != base.zero() {
                    parts.push(base.element_label(v[0]).to_string());
                }
                for (i, &c) in v.iter().enumerate().skip(1) {
                    if c == base.one() {
                        parts.push(NAMES[i - 1].to_string());
                    } else if c != base.zero() {
                        parts.push(format!("{}{}", base.element_label(c), NAMES[i - 1]));
                    }
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join("+")
                }
            })
            .collect();
        let mut one = vec![base.zero(); width];
        one[0] = base.one();
        let gens = NAMES[..rank].join(",");
        Self::build(
            format!("{}[{gens}]/({gens})^2", base.label()),
            size,
            add,
            mul,
            0,
            encode(&one),
            labels,
        )
    }

    /// The quotient `R/I` where `I` is the ideal generated by `generators`.
    /// Cosets are indexed by ascending least representative.
    pub fn quotient(&self, generators: &[Elem]) -> Result<Self> {
        self.check_elems(generators)?;
        let ideal = self.ideal(generators);
        let n = self.size();
        // class[r] = least representative of r + I
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for r in 0..n {
            if class[r] == usize::MAX {
                for &i in &ideal {
                    class[self.add(r, i)] = reps.len();
                }
                reps.push(r);
            }
        }
        let m = reps.len();
        let add = (0..m * m)
            .map(|k| class[self.add(reps[k / m], reps[k % m])])
            .collect();
        let mul = (0..m * m)
            .map(|k| class[self.mul(reps[k / m], reps[k % m])])
            .collect();
        let labels = reps
            .iter()
            .map(|&r| format!("[{}]", self.element_label(r)))
            .collect();
        let gens: Vec<&str> = generators.iter().map(|&g| self.element_label(g)).collect();
        Self::build(
            format!("{}/({})", self.label(), gens.join(",")),
            m,
            add,
            mul,
            class[self.zero()],
            class[self.one()],
            labels,
        )
    }

    /// The ideal generated by `generators`, as an ascending element list.
    pub fn ideal(&self, generators: &[Elem]) -> Vec<Elem> {
        let n = self.size();
        let mut member = vec![false; n];
        member[self.zero()] = true;
        let mut frontier = vec![self.zero()];
        let products: Vec<Elem> = generators
            .iter()
            .flat_map(|&g| (0..n).map(move |r| (g, r)))
            .map(|(g, r)| self.mul(g, r))
            .collect();
        while let Some(x) = frontier.pop() {
            for &p in &products {
                let y = self.add(x, p);
                if !member[y] {
                    member[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..n).filter(|&r| member[r]).collect()
    }

    pub fn size(&self) -> usize {
        self.data.size
    }

    pub fn zero(&self) -> Elem {
        self.data.zero
    }

    pub fn one(&self) -> Elem {
        self.data.one
    }

    pub fn label(&self) -> &str {
        &self.data.label
    }

    /// Returns a copy of this ring carrying a different display label.
    pub fn relabeled(&self, label: impl Into<String>) -> Self {
        let d = &self.data;
        FiniteRing {
            data: Arc::new(RingData {
                size: d.size,
                add: d.add.clone(),
                mul: d.mul.clone(),
                neg: d.neg.clone(),
                inv: d.inv.clone(),
                zero: d.zero,
                one: d.one,
                label: label.into(),
                element_labels: d.element_labels.clone(),
            }),
        }
    }

    pub fn element_label(&self, e: Elem) -> &str {
        &self.data.element_labels[e]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.data.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.data.add[a * self.data.size + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.data.mul[a * self.data.size + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.data.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut exp: u32) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.data.inv[a]
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.data.inv[a].is_some()
    }

    /// The image of an integer under the unique map ℤ → R.
    pub fn from_integer(&self, n: i128) -> Elem {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            m >>= 1;
        }
        if n < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    /// Additive order of the unit element.
    pub fn characteristic(&self) -> usize {
        let mut x = self.one();
        let mut n = 1;
        while x != self.zero() {
            x = self.add(x, self.one());
            n += 1;
        }
        n
    }

    pub(crate) fn check_elems(&self, elems: &[Elem]) -> Result<()> {
        match elems.iter().find(|&&e| e >= self.size()) {
            Some(e) => Err(definition(format!(
                "element index {e} out of range for {}",
                self.label()
            ))),
            None => Ok(()),
        }
    }

    /// Re-runs the exhaustive axiom check on the stored tables.
    pub fn verify_axioms(&self) -> Result<()> {
        let d = &self.data;
        check_axioms(d.size, &d.add, &d.mul, d.zero, d.one)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.size == other.data.size
                && self.data.zero == other.data.zero
                && self.data.one == other.data.one
                && self.data.add == other.data.add
                && self.data.mul == other.data.mul)
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, size {})", self.label(), self.size())
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn poly_label(base: &FiniteRing, coeffs: &[Elem], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == base.zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (i, c == base.one()) {
            (0, _) => base.element_label(c).to_string(),
            (_, true) => mono,
            (_, false) => format!("{}{mono}", base.element_label(c)),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn check_axioms(size: usize, add: &[Elem], mul: &[Elem], zero: Elem, one: Elem) -> Result<()> {
    let bad = |msg: String| Err(Error::RingAxiom(msg));
    if zero >= size || one >= size {
        return bad("zero or one index out of range".into());
    }
    if add.len() != size * size || mul.len() != size * size {
        return bad("operation tables have the wrong shape".into());
    }
    if let Some(&v) = add.iter().chain(mul).find(|&&v| v >= size) {
        return bad(format!("table entry {v} out of range"));
    }
    if size > 1 && zero == one {
        return bad("zero equals one in a ring with more than one element".into());
    }
    let a_ = |a: usize, b: usize| add[a * size + b];
    let m_ = |a: usize, b: usize| mul[a * size + b];
    for a in 0..size {
        if a_(zero, a) != a {
            return bad(format!("0 + {a} != {a}"));
        }
        if m_(one, a) != a {
            return bad(format!("1 * {a} != {a}"));
        }
        if !(0..size).any(|b| a_(a, b) == zero) {
            return bad(format!("{a} has no additive inverse"));
        }
        for b in 0..size {
            if a_(a, b) != a_(b, a) {
                return bad(format!("addition not commutative at ({a},{b})"));
            }
            if m_(a, b) != m_(b, a) {
                return bad(format!("multiplication not commutative at ({a},{b})"));
            }
            for c in 0..size {
                if a_(a_(a, b), c) != a_(a, a_(b, c)) {
                    return bad(format!("addition not associative at ({a},{b},{c})"));
                }
                if m_(m_(a, b), c) != m_(a, m_(b, c)) {
                    return bad(format!("multiplication not associative at ({a},{b},{c})"));
                }
                if m_(a, a_(b, c)) != a_(m_(a, b), m_(a, c)) {
                    return bad(format!("distributivity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(())
}

/// A unital ring homomorphism between finite rings, stored as an element table.
#[derive(Clone, PartialEq, Eq)]
pub struct RingHom {
    source: FiniteRing,
    target: FiniteRing,
    map: Vec<Elem>,
}

impl RingHom {
    /// Validates that `map` preserves 1, sums and products.
    pub fn new(source: FiniteRing, target: FiniteRing, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(definition(
                "homomorphism table length differs from source size",
            ));
        }
        target.check_elems(&map)?;
        if map[source.one()] != target.one() {
            return Err(definition("map does not send 1 to 1"));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.add(a, b)] != target.add(map[a], map[b]) {
                    return Err(definition(format!("map is not additive at ({a},{b})")));
                }
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(definition(format!(
                        "map is not multiplicative at ({a},{b})"
                    )));
                }
            }
        }
        Ok(RingHom {
            source,
            target,
            map,
        })
    }

    pub(crate) fn new_unchecked(source: FiniteRing, target: FiniteRing, map: Vec<Elem>) -> Self {
        RingHom {
            source,
            target,
            map,
        }
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            map: ring.elements().collect(),
        }
    }

    /// The structure map from a prime ring `k` (every element an integer multiple
    /// of 1) into `target`, sending `m·1` to `m·1`.
    pub fn canonical(k: &FiniteRing, target: &FiniteRing) -> Result<Self> {
        let ck = k.characteristic();
        if ck != k.size() {
            return Err(definition(format!(
                "base ring {} is not generated by 1; no canonical structure map",
                k.label()
            )));
        }
        let ct = target.characteristic();
        if !ck.is_multiple_of(ct) {
            return Err(definition(format!(
                "{} is not an algebra over {}: characteristic {ct} does not divide {ck}",
                target.label(),
                k.label()
            )));
        }
        let mut map = vec![0; k.size()];
        let (mut x, mut y) = (k.zero(), target.zero());
        for _ in 0..ck {
            map[x] = y;
            x = k.add(x, k.one());
            y = target.add(y, target.one());
        }
        RingHom::new(k.clone(), target.clone(), map)
    }

    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteRing {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if self.target != other.source {
            return Err(definition(
                "cannot compose homomorphisms with mismatched rings",
            ));
        }
        Ok(RingHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&e| other.map[e]).collect(),
        })
    }
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingHom({} -> {}, {:?})",
            self.source.label(),
            self.target.label(),
            self.map
        )
    }
}
