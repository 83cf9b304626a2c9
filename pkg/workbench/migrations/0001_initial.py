import django.db.models.deletion
import django.utils.timezone
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='StoredPrismatoid',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('name', models.CharField(max_length=100, unique=True)),
                ('slug', models.SlugField(blank=True, max_length=100, unique=True)),
                ('description', models.TextField(blank=True)),
                ('source', models.TextField()),
                ('dim', models.IntegerField(default=0)),
                ('vertex_count', models.IntegerField(default=0)),
                ('facet_count', models.IntegerField(default=0)),
                ('width', models.IntegerField(blank=True, null=True)),
                ('layer_vector', models.CharField(blank=True, max_length=100)),
                ('excess', models.CharField(blank=True, max_length=50)),
                ('non_dstep', models.BooleanField(default=False)),
                ('certificate', models.CharField(blank=True, max_length=20)),
                ('created_at', models.DateTimeField(default=django.utils.timezone.now)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'ordering': ['name'],
                'indexes': [
                    models.Index(fields=['name'], name='workbench_s_name_5f0c1e_idx'),
                    models.Index(fields=['vertex_count'], name='workbench_s_vertex__a2b7d4_idx'),
                ],
            },
        ),
        migrations.CreateModel(
            name='AnnealRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('seed', models.IntegerField(default=0)),
                ('t0', models.FloatField()),
                ('rate', models.FloatField()),
                ('iterations', models.IntegerField()),
                ('epsilon', models.FloatField()),
                ('min_width', models.IntegerField()),
                ('accepted', models.IntegerField(default=0)),
                ('rejected', models.IntegerField(default=0)),
                ('constraint_rejections', models.IntegerField(default=0)),
                ('best_vertex_count', models.IntegerField()),
                ('best_facet_count', models.IntegerField()),
                ('best_width', models.IntegerField(blank=True, null=True)),
                ('best_step', models.IntegerField(default=0)),
                ('best_source', models.TextField()),
                ('trace', models.TextField(blank=True)),
                ('created_at', models.DateTimeField(default=django.utils.timezone.now)),
                ('start', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='anneal_runs', to='workbench.storedprismatoid')),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='SphereRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('vertex_count', models.IntegerField()),
                ('dimension', models.IntegerField()),
                ('facet_count', models.IntegerField()),
                ('distance', models.IntegerField(blank=True, null=True)),
                ('diameter', models.IntegerField(blank=True, null=True)),
                ('non_hirsch', models.BooleanField(default=False)),
                ('sphere_source', models.TextField()),
                ('certificate', models.TextField()),
                ('created_at', models.DateTimeField(default=django.utils.timezone.now)),
                ('start', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='spheres', to='workbench.storedprismatoid')),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
    ]
