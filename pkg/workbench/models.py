import math

from django.db import models
from django.utils import timezone
from django.utils.text import slugify

from .formats import (
    format_sphere_certificate,
    parse_complex_text,
    parse_prismatoid_text,
    serialize_complex,
    serialize_prismatoid,
)
from .prismatoid import certify_non_dstep, excess, layer_vector


class StoredPrismatoid(models.Model):
    """Prismatoid kept as PRISMATOID v1 text, with cached statistics"""
    name = models.CharField(max_length=100, unique=True)
    slug = models.SlugField(max_length=100, unique=True, blank=True)
    description = models.TextField(blank=True)
    source = models.TextField()
    dim = models.IntegerField(default=0)
    vertex_count = models.IntegerField(default=0)
    facet_count = models.IntegerField(default=0)
    # null when the bases are not connected in the dual graph
    width = models.IntegerField(null=True, blank=True)
    layer_vector = models.CharField(max_length=100, blank=True)
    excess = models.CharField(max_length=50, blank=True)
    non_dstep = models.BooleanField(default=False)
    certificate = models.CharField(max_length=20, blank=True)
    created_at = models.DateTimeField(default=timezone.now)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ['name']
        indexes = [
            models.Index(fields=['name'], name='workbench_s_name_5f0c1e_idx'),
            models.Index(fields=['vertex_count'], name='workbench_s_vertex__a2b7d4_idx'),
        ]

    def __str__(self):
        return self.name

    def prismatoid(self):
        return parse_prismatoid_text(self.source)

    def refresh_stats(self, prismatoid=None):
        prismatoid = prismatoid or self.prismatoid()
        value = prismatoid.width
        self.dim = prismatoid.complex.dim
        self.vertex_count = prismatoid.vertex_count
        self.facet_count = prismatoid.facet_count
        self.width = None if value == math.inf else value
        self.layer_vector = ",".join(str(n) for n in layer_vector(prismatoid))
        self.excess = str(excess(prismatoid)) if value != math.inf else "inf"
        self.non_dstep = value > prismatoid.d
        self.certificate = certify_non_dstep(prismatoid).kind

    def save(self, *args, **kwargs):
        if not self.slug:
            self.slug = slugify(self.name)
        self.refresh_stats()
        super().save(*args, **kwargs)


class AnnealRecord(models.Model):
    """Outcome of one annealing chain started from a stored prismatoid"""
    start = models.ForeignKey(StoredPrismatoid, on_delete=models.CASCADE, related_name='anneal_runs')
    seed = models.IntegerField(default=0)
    t0 = models.FloatField()
    rate = models.FloatField()
    iterations = models.IntegerField()
    epsilon = models.FloatField()
    min_width = models.IntegerField()
    accepted = models.IntegerField(default=0)
    rejected = models.IntegerField(default=0)
    constraint_rejections = models.IntegerField(default=0)
    best_vertex_count = models.IntegerField()
    best_facet_count = models.IntegerField()
    best_width = models.IntegerField(null=True, blank=True)
    best_step = models.IntegerField(default=0)
    best_source = models.TextField()
    trace = models.TextField(blank=True)
    created_at = models.DateTimeField(default=timezone.now)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        return f"Run {self.seed} on {self.start}: {self.best_vertex_count} vertices"

    def best(self):
        return parse_prismatoid_text(self.best_source)

    @classmethod
    def from_run(cls, start, run):
        schedule, objective = run.config.schedule, run.config.objective
        best_width = run.best.width
        return cls.objects.create(
            start=start,
            seed=run.seed,
            t0=schedule.t0,
            rate=schedule.rate,
            iterations=run.iterations_done,
            epsilon=objective.epsilon,
            min_width=run.min_width,
            accepted=run.accepted,
            rejected=run.rejected,
            constraint_rejections=run.constraint_rejections,
            best_vertex_count=run.best.vertex_count,
            best_facet_count=run.best.facet_count,
            best_width=None if best_width == math.inf else best_width,
            best_step=run.best_step,
            best_source=serialize_prismatoid(run.best),
            trace="\n".join(run.trace),
        )


class SphereRecord(models.Model):
    """Sphere produced by the strong d-step pipeline"""
    start = models.ForeignKey(StoredPrismatoid, on_delete=models.CASCADE, related_name='spheres')
    vertex_count = models.IntegerField()
    dimension = models.IntegerField()
    facet_count = models.IntegerField()
    distance = models.IntegerField(null=True, blank=True)
    diameter = models.IntegerField(null=True, blank=True)
    non_hirsch = models.BooleanField(default=False)
    sphere_source = models.TextField()
    certificate = models.TextField()
    created_at = models.DateTimeField(default=timezone.now)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        return f"Sphere from {self.start}: N={self.vertex_count} D={self.dimension + 1}"

    def sphere(self):
        return parse_complex_text(self.sphere_source)

    @classmethod
    def from_certificate(cls, start, certificate):
        return cls.objects.create(
            start=start,
            vertex_count=certificate.vertex_count,
            dimension=certificate.dim,
            facet_count=certificate.sphere.facet_count,
            distance=None if certificate.distance == math.inf else certificate.distance,
            diameter=None if certificate.diameter in (None, math.inf) else certificate.diameter,
            non_hirsch=certificate.non_hirsch,
            sphere_source=serialize_complex(certificate.sphere),
            certificate=format_sphere_certificate(certificate),
        )
