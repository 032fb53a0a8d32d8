"""Genetic algorithm baseline.

Evolves a population of task-to-VM vectors: uniform random parent selection,
one-point crossover, per-gene uniform mutation, and replacement of the worst
individual. The best individual ever seen is tracked separately, so the
reported optimum never regresses. Fully deterministic for a given seed; the
initial population and the evolution loop draw from separate derived streams
(see rng.stream).
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .model import Assignment, Evaluation, Instance, evaluate
from .rng import stream


@dataclass(frozen=True)
class GaParams:
    pop_size: int = 20
    max_generations: int = 100
    mutation_prob: float = 0.05
    seed: int = 0

    def __post_init__(self) -> None:
        if self.pop_size < 2:
            raise ValueError("pop_size must be at least 2")
        if self.max_generations < 1:
            raise ValueError("max_generations must be at least 1")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError("mutation_prob must lie in [0, 1]")


@dataclass(frozen=True)
class Chromosome:
    genes: Assignment
    fitness: Evaluation


@dataclass(frozen=True)
class GaResult:
    best: Chromosome
    history: tuple[float, ...]
    seed: int


def score(instance: Instance, genes) -> Chromosome:
    genes = tuple(genes)
    return Chromosome(genes, evaluate(instance, genes))


def init_population(instance: Instance, params: GaParams) -> list[Chromosome]:
    """pop_size chromosomes with genes uniform over VM indices, all scored."""
    rng = stream(params.seed, "ga-init")
    m = instance.n_vms
    n = instance.n_tasks
    return [
        score(instance, tuple(rng.randrange(m) for _ in range(n)))
        for _ in range(params.pop_size)
    ]


def select(population: list[Chromosome], rng: Random) -> Chromosome:
    """Uniform random pick: every individual has probability 1/len(population)."""
    return population[rng.randrange(len(population))]


def crossover(
    parent1: Chromosome, parent2: Chromosome, instance: Instance, rng: Random
) -> Chromosome:
    """One-point crossover; the child is scored before return.

    The cut point is uniform over 1..n-1; for n <= 1 the child is a copy of
    parent1 (no draw is consumed).
    """
    n = len(parent1.genes)
    if n <= 1:
        return Chromosome(parent1.genes, parent1.fitness)
    k = rng.randint(1, n - 1)
    return score(instance, parent1.genes[:k] + parent2.genes[k:])


def mutate(
    ch: Chromosome, instance: Instance, params: GaParams, rng: Random
) -> Chromosome:
    """Resample each gene uniformly over VM indices with mutation_prob, rescore."""
    m = instance.n_vms
    genes = list(ch.genes)
    changed = False
    for j in range(len(genes)):
        if rng.random() < params.mutation_prob:
            genes[j] = rng.randrange(m)
            changed = True
    if not changed:
        return ch
    return score(instance, tuple(genes))


def _worst_index(population: list[Chromosome]) -> int:
    return max(range(len(population)), key=lambda k: population[k].fitness.scalar)


def replace_if_better(population: list[Chromosome], child: Chromosome) -> list[Chromosome]:
    """New population with the worst member replaced by the child when the
    child's scalar is <= the worst scalar (inclusive); otherwise unchanged."""
    out = list(population)
    widx = _worst_index(out)
    if child.fitness.scalar <= out[widx].fitness.scalar:
        out[widx] = child
    return out


def solve_ga(instance: Instance, params: GaParams | None = None) -> GaResult:
    """Run the full evolution loop and return the best-ever chromosome.

    Each generation: pick two parents uniformly, cross them, decide on the
    pre-mutation child's score whether it replaces the worst member, then the
    surviving copy of an accepted child is its mutated form. history records
    the best-ever scalar after every generation and is non-increasing.
    """
    params = params or GaParams()
    population = init_population(instance, params)
    rng = stream(params.seed, "ga-evolve")

    best = min(population, key=lambda ch: ch.fitness.scalar)
    history = []
    for _ in range(params.max_generations):
        parent1 = select(population, rng)
        parent2 = select(population, rng)
        child = crossover(parent1, parent2, instance, rng)
        mutant = mutate(child, instance, params, rng)
        widx = _worst_index(population)
        if child.fitness.scalar <= population[widx].fitness.scalar:
            population[widx] = mutant
        gen_best = min(population, key=lambda ch: ch.fitness.scalar)
        if gen_best.fitness.scalar < best.fitness.scalar:
            best = gen_best
        history.append(best.fitness.scalar)
    return GaResult(best, tuple(history), params.seed)
