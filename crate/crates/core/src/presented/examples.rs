//! Small colimits used as sanity checks and demonstrations.

use alloc::vec;
use alloc::vec::Vec;

use super::{coequalizer, Colimit, GeneratorSpec, Morphism, PresentedCategory, PresentedFunctor};
use crate::error::Result;

/// The coequalizer of the two functors `(1 → 2) ⇉ (1 → 2 → 3)` picking out
/// the arrows `b` and `c`.  It has one object `X` and a free loop `x`.
#[derive(Clone, Debug)]
pub struct ArrowCoequalizer {
    pub source: PresentedCategory,
    pub target: PresentedCategory,
    pub f: PresentedFunctor,
    pub g: PresentedFunctor,
    pub colimit: Colimit,
}

pub fn arrow_coequalizer(length_cap: usize) -> Result<ArrowCoequalizer> {
    let source = PresentedCategory::free(&["1", "2"], &[GeneratorSpec::new("a", "1", "2")], length_cap)?;
    let target = PresentedCategory::free(
        &["1", "2", "3"],
        &[GeneratorSpec::new("b", "1", "2"), GeneratorSpec::new("c", "2", "3")],
        length_cap,
    )?;
    let f = PresentedFunctor::from_declared(&source, &target, vec![0, 1], vec![target.generator_morphism(0)])?;
    let g = PresentedFunctor::from_declared(&source, &target, vec![1, 2], vec![target.generator_morphism(1)])?;
    let mut colimit = coequalizer(&source, &target, &f, &g)?;
    let obj = colimit.category.objects()[0].clone();
    let gen = colimit.category.generators()[0].name.clone();
    colimit.category = colimit.category.renamed(&[(&obj, "X")], &[(&gen, "x")]);
    Ok(ArrowCoequalizer { source, target, f, g, colimit })
}

/// `𝕜[y]/(y^m)` as a one-object category.
pub fn truncated_loop(m: usize, length_cap: usize) -> Result<PresentedCategory> {
    let free = PresentedCategory::free(&["Y"], &[GeneratorSpec::new("y", "Y", "Y")], length_cap)?;
    let word = vec!["y"; m].join(" ");
    free.with_relations(vec![free.parse(&[(1, &word)])?])
}

/// The functor `T_m` out of the coequalizer sending `x ↦ y`.
pub fn truncation(demo: &ArrowCoequalizer, m: usize) -> Result<(PresentedCategory, PresentedFunctor)> {
    let t = truncated_loop(m, demo.colimit.category.length_cap())?;
    let f = PresentedFunctor::from_declared(&demo.colimit.category, &t, vec![0], vec![t.generator_morphism(0)])?;
    Ok((t, f))
}

/// Normal forms of `x, x², …, x^k`, as formatted strings.
pub fn loop_powers(demo: &ArrowCoequalizer, k: usize) -> Result<Vec<alloc::string::String>> {
    let cat = &demo.colimit.category;
    let x = cat.generator_morphism(0);
    let mut acc = Morphism::identity(0);
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        acc = cat.compose(&acc, &x)?;
        out.push(cat.format(&acc));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presented::DEFAULT_LENGTH_CAP;

    #[test]
    fn coequalizer_is_a_free_loop() {
        let demo = arrow_coequalizer(DEFAULT_LENGTH_CAP).unwrap();
        let cat = &demo.colimit.category;
        assert_eq!(cat.objects(), ["X"]);
        assert_eq!(cat.generators().len(), 1);
        assert!(cat.relations().is_empty());
        demo.colimit.cone.check(&demo.target, cat).unwrap();
        let b = demo.colimit.cone.apply(cat, &demo.target.generator_morphism(0)).unwrap();
        let c = demo.colimit.cone.apply(cat, &demo.target.generator_morphism(1)).unwrap();
        assert_eq!((cat.format(&b), cat.format(&c)), ("x".into(), "x".into()));
        let powers = loop_powers(&demo, 10).unwrap();
        let mut uniq = powers.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 10);
        assert!(!cat.hom_basis_bounded(0, 0, DEFAULT_LENGTH_CAP).saturated);
    }

    #[test]
    fn truncations_factor_through_the_cone() {
        let demo = arrow_coequalizer(DEFAULT_LENGTH_CAP).unwrap();
        for m in 1..=5 {
            let (t, f) = truncation(&demo, m).unwrap();
            f.check(&demo.colimit.category, &t).unwrap();
            let composite = demo.colimit.cone.then(&f, &t).unwrap();
            assert_eq!(composite.images[0], composite.images[1]);
            assert_eq!(t.hom_basis(0, 0).unwrap().dim(), m);
        }
    }
}
