//! Text renderings for the algebraic subcommands.

use lagmono_core::classifier::{classify, isomorphism_type, GeneratorSet};
use lagmono_core::dihedral::{f_of, nf_to_mat, reduce_word, GroupWord};
use lagmono_core::exact::{Int2Vec, MaslovForm};
use lagmono_core::spectrum::{fixed_class, invariants, mf_by_determinant, mf_value};

use crate::error::CliError;

/// `Dinf k=0 d=3`, `Z2 k=2`, `Z d=4` or `trivial`.
pub fn cmd_classify(gens: &str) -> Result<String, CliError> {
    let gens: GeneratorSet = gens.parse()?;
    Ok(classify(&gens)?.to_string())
}

/// Like [`cmd_classify`], followed by the isomorphism type.
pub fn cmd_classify_verbose(gens: &str) -> Result<String, CliError> {
    let gens: GeneratorSet = gens.parse()?;
    let cls = classify(&gens)?;
    Ok(format!("{cls} ({})", isomorphism_type(&cls)))
}

/// `t=0 s=2`. The generators are read in adapted coordinates of `(ml, 0)`.
pub fn cmd_invariants(gens: &str, ml: i64) -> Result<String, CliError> {
    let gens: GeneratorSet = gens.parse()?;
    let cls = classify(&gens)?;
    Ok(invariants(&cls, &MaslovForm::adapted(ml)?)?.to_string())
}

/// `f3: eta=(1, 2) m_f=2 det=2`.
pub fn cmd_mf(k: i64, ml: i64) -> Result<String, CliError> {
    let f = f_of(k);
    let eta = fixed_class(&f)?;
    let mf = mf_value(&f, &MaslovForm::adapted(ml)?)?;
    let det = mf_by_determinant(&f, Int2Vec::new(0, 1))?;
    Ok(format!("{f}: eta={eta} m_f={mf} det={det}"))
}

/// `g^3 f g^5 = f-2 (1 0; -2 -1)`.
pub fn cmd_word(word: &str) -> Result<String, CliError> {
    let w: GroupWord = word.parse()?;
    let nf = reduce_word(&w)?;
    Ok(format!("{w} = {nf} {}", nf_to_mat(nf)))
}
