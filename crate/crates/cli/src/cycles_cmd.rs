//! `cycles`: calibrated-cycle demonstrations.

use serde_json::json;

use crate::config::RunConfig;
use crate::report::Report;
use crate::suites::{aj_checks, isotropy_checks, newton_checks, witness_checks};
use crate::Demo;

pub fn run(demo: Demo, cfg: &RunConfig) -> Report {
    let name = match demo {
        Demo::Assoc => "cycles assoc",
        Demo::Coassoc => "cycles coassoc",
        Demo::Ddt => "cycles ddt",
        Demo::Aj => "cycles aj",
    };
    let mut report = Report::new(name, cfg.to_map());
    match demo {
        Demo::Assoc => report.extend(witness_checks(3)),
        Demo::Coassoc => report.extend(witness_checks(4)),
        Demo::Ddt => {
            report.extend(witness_checks(7));
            let (checks, traces) = newton_checks(cfg);
            report.extend(checks);
            report.data.insert("newton_residuals".into(), json!(traces));
        }
        Demo::Aj => {
            let (checks, ranks) = aj_checks(cfg);
            report.extend(checks);
            report.data.insert("derivative_ranks".into(), ranks);
            report.extend(isotropy_checks(cfg));
        }
    }
    report
}
