//! Term-level look at the published closed forms next to the quadrature
//! reference. The alternating sums over eavesdropper subsets cancel, so the
//! closed forms are kept as a fidelity mode rather than a primary engine.

use swipt_secrecy::secrecy::{rician_closed_form_terms, RicianClosedFormInputs};
use swipt_secrecy::{
    secrecy_closedform_nakagami, secrecy_closedform_rician, secrecy_quadrature, BetaInterpretation,
    NakagamiIntegratedVariant, ReceiverArchitecture, Scenario,
};

fn main() -> swipt_secrecy::Result<()> {
    for n in [1, 2, 5] {
        let mut s = Scenario::default_rician();
        s.n_eves = n;
        let reference = secrecy_quadrature(&s)?.value;
        for beta in [BetaInterpretation::ComplementPair, BetaInterpretation::AsPrinted] {
            let cf = secrecy_closedform_rician(&s, beta)?;
            let flag = cf.flag.as_ref().map_or(String::new(), |f| format!(" [{}]", f.code));
            println!(
                "Rician N={n} {:<16} closed form {:>10.4}{flag:<14} quadrature {reference:.4}",
                beta.name(),
                cf.value
            );
        }
    }

    let s = Scenario::default_rician();
    let inputs = RicianClosedFormInputs {
        n: s.n_eves,
        k_s: 5.0,
        k_e: 5.0,
        rate_s: s.main_snr_law()?.rate_scale,
        rate_e: swipt_secrecy::linkmodel::eve_snr_law(&s)?.rate_scale,
        integrated_const: None,
    };
    let terms = rician_closed_form_terms(&inputs, BetaInterpretation::ComplementPair)?;
    println!(
        "\nterms at the defaults: eve sum {:e}, main sum {:e}, magnitude {:e}",
        terms.eve_sum, terms.main_sum, terms.magnitude
    );

    for arch in [ReceiverArchitecture::Separated, ReceiverArchitecture::Integrated] {
        let mut s = Scenario::default_nakagami().with_eve_arch(arch);
        for m in [1.0, 3.0] {
            s.main_fading = swipt_secrecy::FadingSpec::nakagami(m);
            s.eve_fading = swipt_secrecy::FadingSpec::nakagami(m);
            let cf = secrecy_closedform_nakagami(&s, NakagamiIntegratedVariant::Corrected)?;
            println!(
                "Nakagami m={m} {arch:?}: closed form {:.4} {:?}, quadrature {:.4}",
                cf.value,
                cf.flag.map(|f| f.code),
                secrecy_quadrature(&s)?.value
            );
        }
    }
    Ok(())
}
