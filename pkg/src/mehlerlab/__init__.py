"""mehlerlab -- numerical checks of Ornstein-Uhlenbeck semigroups driven by Lévy noise."""

__version__ = "0.1.0"
