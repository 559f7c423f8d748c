use khova_core::initial::{initial_form, initial_ideal, lineality_space};
use khova_core::polyhedra::{
    compactification_body, hat_polytope, hilbert_function, lattice_volume, newton_okounkov_body,
    newton_okounkov_cone, normalized_volume, rees_graded_dims,
};
use khova_core::tropical::{
    contains_monomial, contraction, in_tropical_variety, in_tropical_variety_rank_r, is_binomial,
    is_prime_desk, verify_prime_cone, PrimalityReport,
};
use khova_core::valuation::{
    is_valuation, khovanskii_complete, khovanskii_test, quasivaluation_axioms_check, subduction,
    value_semigroup, Mode, SubductionOutcome, ValuationContext,
};
use khova_core::{
    rat, Caps, Error, GroebnerContext, MonomialOrder, RankVector, Rational, WeightMatrix,
};
use serde_json::{json, Value};

use crate::encode as enc;
use crate::job::Job;
use crate::CliError;

pub const COMMANDS: &[&str] = &[
    "gb",
    "initial",
    "trop",
    "cone-verify",
    "lineality",
    "val",
    "subduce",
    "khovanskii",
    "complete",
    "semigroup",
    "nobody",
    "degree",
    "hilbert",
    "compactify",
    "rees-dims",
    "contract",
];

/// Result payload and whether a cap cut the computation short.
pub struct Outcome {
    pub result: Value,
    pub capped: bool,
}

impl From<Value> for Outcome {
    fn from(result: Value) -> Self {
        Outcome {
            result,
            capped: false,
        }
    }
}

pub struct Run<'a> {
    pub job: &'a Job,
    pub caps: Caps,
    pub seed: u64,
}

impl Run<'_> {
    pub fn execute(&self, command: &str) -> Result<Outcome, CliError> {
        match command {
            "gb" => self.gb(),
            "initial" => self.initial(),
            "trop" => self.trop(),
            "cone-verify" => self.cone_verify(),
            "lineality" => self.lineality(),
            "val" => self.val(),
            "subduce" => self.subduce(),
            "khovanskii" => self.khovanskii(),
            "complete" => self.complete(),
            "semigroup" => self.semigroup(),
            "nobody" => self.nobody(),
            "degree" => self.degree(),
            "hilbert" => self.hilbert(),
            "compactify" => self.compactify(),
            "rees-dims" => self.rees_dims(),
            "contract" => self.contract(),
            other => Err(CliError::Usage(format!("unknown command {other:?}"))),
        }
    }

    fn context(&self) -> Result<ValuationContext, CliError> {
        let vars = self.job.vars()?;
        match self.job.word("mode")?.as_deref() {
            None | Some("presentation") => {
                let ideal = self.job.ideal(&vars)?;
                let m = self.job.require_matrix()?;
                let tiebreak = self.job.order("order")?;
                Ok(ValuationContext::presentation_with(
                    &ideal, &m, tiebreak, &self.caps,
                )?)
            }
            Some("sagbi") => {
                let gens = self.job.polynomials("sagbi_generators", &vars)?;
                let order = self.job.order("ambient_order")?;
                Ok(ValuationContext::sagbi(&gens, &order)?)
            }
            Some(other) => Err(CliError::Job {
                line: None,
                msg: format!("unknown mode {other:?}"),
            }),
        }
    }

    fn degree_bound(&self, default: u32) -> Result<u32, CliError> {
        Ok(self.job.integer("degree")?.unwrap_or(default))
    }

    fn gb(&self) -> Result<Outcome, CliError> {
        let vars = self.job.vars()?;
        let ideal = self.job.ideal(&vars)?;
        let tiebreak = self.job.order("order")?;
        let order = match self.job.matrix()? {
            Some(m) => MonomialOrder::composite(m, tiebreak)?,
            None => tiebreak,
        };
        let gb = GroebnerContext::new(&ideal, &order, &self.caps)?;
        Ok(json!({
            "basis": enc::polys(gb.basis()),
            "leading_monomials": gb.leading_monomials().iter().map(enc::exponent).collect::<Vec<_>>(),
            "order": gb.order().to_string(),
            "effective_order": gb.effective_order().to_string(),
            "reduced": gb.is_reduced(),
        })
        .into())
    }

    fn initial(&self) -> Result<Outcome, CliError> {
        let vars = self.job.vars()?;
        let ideal = self.job.ideal(&vars)?;
        let m = self.job.require_matrix()?;
        let forms = ideal
            .generators()
            .iter()
            .map(|g| initial_form(g, &m))
            .collect::<Result<Vec<_>, _>>()?;
        let init = initial_ideal(&ideal, &m, &self.caps)?;
        let report = is_prime_desk(&init, &self.caps)?;
        let replay = report.replay(&init, &self.caps)?;
        Ok(json!({
            "initial_forms": enc::polys(&forms),
            "initial_ideal": enc::ideal(&init),
            "monomial_free": !contains_monomial(&init, &self.caps)?,
            "binomial": is_binomial(&init, &self.caps)?,
            "primality": report.verdict.to_string(),
            "certificate": enc::certificate(&report.certificate),
            "certificate_replay": replay,
        })
        .into())
    }

    fn trop(&self) -> Result<Outcome, CliError> {
        let vars = self.job.vars()?;
        let ideal = self.job.ideal(&vars)?;
        if let Some(u) = self.job.rational_row("u")? {
            let inside = in_tropical_variety(&u, &ideal, &self.caps)?;
            return Ok(json!({ "weight": enc::qs(&u), "in_tropical_variety": inside }).into());
        }
        let m = self.job.require_matrix()?;
        let inside = in_tropical_variety_rank_r(&m, &ideal, &self.caps)?;
        Ok(json!({ "matrix": enc::matrix(&m), "in_tropical_variety": inside }).into())
    }

    fn cone_verify(&self) -> Result<Outcome, CliError> {
        let vars = self.job.vars()?;
        let ideal = self.job.ideal(&vars)?;
        let rays = self.job.rational_rows("rays")?.unwrap_or_default();
        let lineality = self.job.rational_rows("lineality")?.unwrap_or_default();
        let samples = self.job.integer("samples")?.unwrap_or(5);
        let r = verify_prime_cone(&rays, &lineality, &ideal, samples, self.seed, &self.caps)?;
        let replay = match (&r.common_initial_ideal, &r.certificate) {
            (Some(init), Some(cert)) => {
                let report = PrimalityReport {
                    verdict: r.primality,
                    certificate: cert.clone(),
                };
                Value::Bool(report.replay(init, &self.caps)?)
            }
            _ => Value::Null,
        };
        Ok(json!({
            "sample_points": enc::rows(&r.sample_points),
            "common_initial_ideal": r.common_initial_ideal.as_ref().map(enc::ideal),
            "monomial_free": r.monomial_free,
            "binomial": r.binomial,
            "primality": r.primality.to_string(),
            "certificate": r.certificate.as_ref().map(enc::certificate),
            "certificate_replay": replay,
            "in_groebner_region": r.in_groebner_region,
            "notes": r.notes,
        })
        .into())
    }

    fn lineality(&self) -> Result<Outcome, CliError> {
        let vars = self.job.vars()?;
        let ideal = self.job.ideal(&vars)?;
        Ok(json!({ "basis": enc::rows(&lineality_space(&ideal, &self.caps)?) }).into())
    }

    fn val(&self) -> Result<Outcome, CliError> {
        let ctx = self.context()?;
        let vars = self.job.vars()?;
        let fs = self.job.polynomials("f", &vars)?;
        let values = fs
            .iter()
            .map(|f| Ok(json!({ "f": enc::poly(f), "value": enc::vector(&ctx.evaluate(f)?) })))
            .collect::<Result<Vec<_>, CliError>>()?;
        let gen_values: Vec<Value> = ctx.generator_values()?.iter().map(enc::vector).collect();
        let mut out = json!({ "values": values, "generator_values": gen_values });
        if ctx.mode() == Mode::Presentation {
            let trials = self.job.integer("trials")?.unwrap_or(20);
            let axioms = quasivaluation_axioms_check(&ctx, trials, self.seed)?;
            out["is_valuation"] = json!(format!("{:?}", is_valuation(&ctx, &self.caps)?));
            out["axioms"] = json!({
                "pairs_checked": axioms.pairs_checked,
                "holds": axioms.holds(),
                "violations": axioms.violations.len(),
                "strict_witnesses": axioms.strict_witnesses.iter().map(|w| json!({
                    "f": enc::poly(&w.f),
                    "g": enc::poly(&w.g),
                    "value_f": enc::vector(&w.value_f),
                    "value_g": enc::vector(&w.value_g),
                    "value_fg": enc::vector(&w.value_fg),
                })).collect::<Vec<_>>(),
            });
        }
        Ok(out.into())
    }

    fn subduce(&self) -> Result<Outcome, CliError> {
        let ctx = self.context()?;
        let vars = self.job.vars()?;
        let fs = self.job.polynomials("f", &vars)?;
        let [f] = fs.as_slice() else {
            return Err(CliError::Job {
                line: None,
                msg: "subduce needs exactly one polynomial under \"f\"".into(),
            });
        };
        let trace = subduction(f, &ctx, self.caps.max_subduction)?;
        let outcome = match trace.outcome {
            SubductionOutcome::Exact => "Exact",
            SubductionOutcome::CapExceeded => "CapExceeded",
            SubductionOutcome::Stuck => "Stuck",
        };
        let result = json!({
            "f": enc::poly(f),
            "outcome": outcome,
            "steps": trace.steps.iter().map(|s| json!({
                "value": enc::vector(&s.value),
                "expression": enc::poly(&s.expression),
            })).collect::<Vec<_>>(),
            "expression": enc::poly(&trace.expression()),
            "residual": enc::poly(&trace.residual),
        });
        Ok(Outcome {
            result,
            capped: trace.outcome == SubductionOutcome::CapExceeded,
        })
    }

    fn khovanskii(&self) -> Result<Outcome, CliError> {
        let ctx = self.context()?;
        let r = khovanskii_test(&ctx, &self.caps)?;
        Ok(json!({ "holds": r.holds, "diagnostics": r.diagnostics }).into())
    }

    fn complete(&self) -> Result<Outcome, CliError> {
        let ctx = self.context()?;
        let rounds = self.job.integer("rounds")?.unwrap_or(6);
        let r = khovanskii_complete(ctx.generators(), &ctx, rounds, &self.caps)?;
        let sets: Vec<Value> = r
            .value_sets
            .iter()
            .map(|s| Value::Array(s.iter().map(enc::vector).collect()))
            .collect();
        let result = json!({
            "basis": enc::polys(&r.basis),
            "rounds": r.rounds,
            "complete": r.complete,
            "value_set_sizes": r.value_sets.iter().map(|s| s.len()).collect::<Vec<_>>(),
            "value_sets": sets,
            "diagnostics": r.diagnostics,
        });
        Ok(Outcome {
            result,
            capped: !r.complete,
        })
    }

    fn semigroup(&self) -> Result<Outcome, CliError> {
        let ctx = self.context()?;
        let s = value_semigroup(&ctx, &self.caps)?;
        let mut out = json!({
            "generators": s.generators.iter().map(enc::vector).collect::<Vec<_>>(),
            "graded": s.is_graded(),
        });
        if s.is_graded() {
            let bound = self.degree_bound(4)? as usize;
            out["level_sizes"] = json!((0..=bound).map(|k| s.level(k).len()).collect::<Vec<_>>());
        }
        if let Some(levels) = self.job.rational_rows("levels")? {
            out["membership"] = json!(levels
                .iter()
                .map(
                    |l| json!({ "value": enc::qs(l), "member": s.contains(&RankVector(l.clone())) })
                )
                .collect::<Vec<_>>());
        }
        Ok(out.into())
    }

    fn nobody(&self) -> Result<Outcome, CliError> {
        let ctx = self.context()?;
        let body = newton_okounkov_body(&ctx, &self.caps)?;
        let q = body.affine_dimension().max(0) as usize;
        Ok(json!({
            "body": enc::polyhedron(&body),
            "cone": enc::polyhedron(&newton_okounkov_cone(&ctx, &self.caps)?),
            "dimension": q,
            "volume": enc::q(&lattice_volume(&body, q)?),
            "degree": enc::q(&normalized_volume(&body, q)?),
        })
        .into())
    }

    fn degree(&self) -> Result<Outcome, CliError> {
        let ctx = self.context()?;
        let body = newton_okounkov_body(&ctx, &self.caps)?;
        let q = body.affine_dimension().max(0) as usize;
        let degree = normalized_volume(&body, q)?;
        let mut out = json!({ "dimension": q, "degree": enc::q(&degree) });
        if ctx.mode() == Mode::Presentation && ctx.ideal().has_homogeneous_generators() {
            let bound = self.degree_bound(8)?;
            let h = hilbert_function(&ctx, bound)?;
            out["hilbert"] = json!(h);
            // Leading coefficient check: H(i) · q! / i^q at the top degree.
            if bound > 0 {
                let i = rat(bound as i64);
                let fact = (1..=q as i64).fold(Rational::from_integer(1.into()), |a, k| a * rat(k));
                let ratio =
                    rat(h[bound as usize] as i64) * fact / (0..q).fold(rat(1), |a, _| a * &i);
                out["hilbert_ratio_at_bound"] = enc::q(&ratio);
            }
        }
        Ok(out.into())
    }

    fn hilbert(&self) -> Result<Outcome, CliError> {
        let ctx = self.context()?;
        let bound = self.degree_bound(8)?;
        Ok(json!({ "hilbert": hilbert_function(&ctx, bound)? }).into())
    }

    fn delta(&self, r: usize) -> Result<Vec<Rational>, CliError> {
        Ok(self
            .job
            .rational_row("delta")?
            .unwrap_or_else(|| vec![rat(-1); r]))
    }

    fn compactify(&self) -> Result<Outcome, CliError> {
        let ctx = self.context()?;
        let r = ctx
            .generator_values()?
            .first()
            .map(|v| v.len())
            .unwrap_or(0);
        let delta = self.delta(r)?;
        let cb = compactification_body(&ctx, &delta, &self.caps)?;
        let hat = hat_polytope(&ctx, &delta, &self.caps)?;
        let round_trip = cb.body.round_trip_from_v()? == cb.body
            && cb.body.round_trip_from_h()? == cb.body
            && hat.round_trip_from_v()? == hat
            && hat.round_trip_from_h()? == hat;
        let origin_body = cb
            .body
            .has_vertex(&vec![Rational::from_integer(0.into()); r]);
        let origin_hat = hat.has_vertex(&vec![Rational::from_integer(0.into()); hat.dim()]);
        let mut homogeneous = true;
        for n in 1..=4u32 {
            homogeneous &= cb.level_region(n)? == cb.body.scaled(&rat(n as i64))?;
        }
        Ok(json!({
            "delta": enc::qs(&delta),
            "cone": enc::polyhedron(&cb.cone),
            "body": enc::polyhedron(&cb.body),
            "hat": enc::polyhedron(&hat),
            "checks": {
                "round_trip": round_trip,
                "bounded": cb.body.is_bounded() && hat.is_bounded(),
                "origin_vertex": origin_body && origin_hat,
                "slice_homogeneity": homogeneous,
            },
        })
        .into())
    }

    fn rees_dims(&self) -> Result<Outcome, CliError> {
        let ctx = self.context()?;
        let sigma = self.job.integers("sigma")?.unwrap_or_default();
        let levels = self.job.rational_rows("levels")?.unwrap_or_default();
        let bound = self.degree_bound(4)?;
        let t = rees_graded_dims(&ctx, &sigma, &levels, bound)?;
        let partitions: Vec<Value> = t
            .partitions
            .iter()
            .map(|p| {
                Value::Array(
                    p.iter()
                        .map(|(k, c)| json!({ "level": enc::qs(k), "dim": c }))
                        .collect(),
                )
            })
            .collect();
        Ok(json!({
            "sigma": t.sigma,
            "max_degree": t.max_degree,
            "hilbert": t.hilbert,
            "partitions": partitions,
            "partition_identity": t.partition_identity(),
            "entries": t.entries.iter().map(|e| json!({
                "level": enc::qs(&e.level),
                "w_dim": e.w_dim,
                "f_dim": e.f_dim,
            })).collect::<Vec<_>>(),
        })
        .into())
    }

    fn contract(&self) -> Result<Outcome, CliError> {
        let vars = self.job.vars()?;
        let ideal = self.job.ideal(&vars)?;
        let m = self.job.require_matrix()?;
        let iota: WeightMatrix = contraction(&m, &ideal, &self.caps)?;
        let again = contraction(&iota, &ideal, &self.caps)?;
        let mut out = json!({
            "matrix": enc::matrix(&m),
            "contraction": enc::matrix(&iota),
            "fixed": iota == m,
            "idempotent": again == iota,
        });
        match in_tropical_variety_rank_r(&m, &ideal, &self.caps) {
            Ok(t) => out["tropical"] = json!(t),
            Err(Error::Precondition(msg)) => out["tropical"] = json!(msg),
            Err(e) => return Err(e.into()),
        }
        Ok(out.into())
    }
}
