use std::collections::BTreeMap;

use arrmc_core::{Error, Result};

use crate::job::JobSpec;
use crate::report::Outcome;

mod arrangement;
mod monodromy;
mod system;

pub trait Command {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, job: &JobSpec) -> Result<Outcome>;
}

/// Subcommands by name.
pub struct CommandRegistry {
    commands: BTreeMap<&'static str, Box<dyn Command>>,
}

impl CommandRegistry {
    pub fn empty() -> Self {
        CommandRegistry {
            commands: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, cmd: Box<dyn Command>) {
        self.commands.insert(cmd.name(), cmd);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Command> {
        self.commands
            .get(name)
            .map(|c| c.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "command",
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.commands.keys().copied().collect()
    }

    pub fn help(&self) -> String {
        let width = self.commands.keys().map(|k| k.len()).max().unwrap_or(0);
        self.commands
            .values()
            .map(|c| format!("  {:width$}  {}\n", c.name(), c.about()))
            .collect()
    }
}

impl Default for CommandRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(arrangement::Poset));
        r.register(Box::new(arrangement::GoodLine));
        r.register(Box::new(arrangement::Cone));
        r.register(Box::new(arrangement::Decone));
        r.register(Box::new(system::Check));
        r.register(Box::new(system::Convolve));
        r.register(Box::new(system::MiddleConvolve));
        r.register(Box::new(system::ComposeVerify));
        r.register(Box::new(monodromy::KatzMc));
        r.register(Box::new(monodromy::Monodromy));
        r.register(Box::new(monodromy::RhVerify));
        r
    }
}
