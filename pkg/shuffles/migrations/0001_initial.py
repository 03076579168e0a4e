from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="StoredMeasure",
            fields=[
                ("id", models.AutoField(auto_created=True, primary_key=True, serialize=False, verbose_name="ID")),
                ("name", models.SlugField(max_length=100, unique=True, verbose_name="name")),
                ("description", models.CharField(blank=True, max_length=200, verbose_name="description")),
                ("spec", models.TextField(verbose_name="JSON spec")),
                ("created", models.DateTimeField(auto_now_add=True, verbose_name="date/time created")),
                ("modified", models.DateTimeField(auto_now=True, verbose_name="date/time modified")),
            ],
            options={
                "verbose_name": "stored measure",
                "verbose_name_plural": "stored measures",
                "ordering": ("name", ),
            },
        ),
    ]
